"""Fermionic Fock-space realization used as an independent numerical oracle.

Modes 1..n act on the 2^n-dimensional space of occupation bitstrings with
Jordan-Wigner signs, giving exact canonical anticommutation relations.  The
composites E^i_j = adag_i a_j, Q_{ijk} = a_i a_j a_k, Qbar^{ijk} =
adag_i adag_j adag_k realize a quadratic superalgebra with odd generators
in the third antisymmetric power of the fundamental; for n = 4 the
occupation-number-2 states form a zero-step module, demonstrated here by
exact matrix computations.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, List, Optional, Tuple

from .linalg import RowSpace


class SparseOp:
    """Sparse exact-rational operator on a 2^n-dimensional Fock space."""

    __slots__ = ("dim", "data")

    def __init__(self, dim: int, data: Optional[Dict[Tuple[int, int], Fraction]] = None):
        self.dim = dim
        self.data = {}
        if data:
            for key, val in data.items():
                if val:
                    self.data[key] = Fraction(val)

    @classmethod
    def identity(cls, dim: int) -> "SparseOp":
        return cls(dim, {(i, i): Fraction(1) for i in range(dim)})

    def __add__(self, other: "SparseOp") -> "SparseOp":
        out = dict(self.data)
        for key, val in other.data.items():
            new = out.get(key, Fraction(0)) + val
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return SparseOp(self.dim, out)

    def __sub__(self, other: "SparseOp") -> "SparseOp":
        return self + (other * Fraction(-1))

    def __mul__(self, other):
        if isinstance(other, SparseOp):
            by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
            for (r, c), val in other.data.items():
                by_row.setdefault(r, []).append((c, val))
            out: Dict[Tuple[int, int], Fraction] = {}
            for (r, k), aval in self.data.items():
                for c, bval in by_row.get(k, ()):
                    key = (r, c)
                    new = out.get(key, Fraction(0)) + aval * bval
                    if new:
                        out[key] = new
                    else:
                        out.pop(key, None)
            return SparseOp(self.dim, out)
        scal = Fraction(other)
        return SparseOp(self.dim, {k: v * scal for k, v in self.data.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseOp) and self.dim == other.dim and self.data == other.data

    def is_zero(self) -> bool:
        return not self.data

    def apply_basis(self, col: int) -> Dict[int, Fraction]:
        return {r: v for (r, c), v in self.data.items() if c == col}

    def restrict(self, basis: List[int]) -> List[List[Fraction]]:
        """Dense matrix of the operator on the span of the given basis
        columns; raises if the operator does not preserve the span."""
        pos = {b: i for i, b in enumerate(basis)}
        mat = [[Fraction(0)] * len(basis) for _ in basis]
        for (r, c), val in self.data.items():
            if c in pos:
                if r not in pos:
                    raise ValueError("operator does not preserve the subspace")
                mat[pos[r]][pos[c]] = val
        return mat

    def __repr__(self):
        entries = ", ".join(f"({r},{c}): {v}" for (r, c), v in sorted(self.data.items()))
        return f"SparseOp(dim={self.dim}, {{{entries}}})"


def _jw_sign(bits: int, mode: int) -> int:
    """(-1)^(number of occupied modes below `mode`), modes 1-based."""
    below = bits & ((1 << (mode - 1)) - 1)
    return -1 if bin(below).count("1") % 2 else 1


def fermion_ops(n: int) -> Tuple[List[SparseOp], List[SparseOp]]:
    """Jordan-Wigner annihilation/creation operators a_1..a_n, adag_1..adag_n
    on the 2^n-dimensional space; satisfy exact canonical anticommutation."""
    if not 1 <= n <= 14:
        raise ValueError(f"mode count {n} out of supported range 1..14")
    dim = 1 << n
    ann, cre = [], []
    for i in range(1, n + 1):
        bit = 1 << (i - 1)
        a_data = {}
        c_data = {}
        for b in range(dim):
            if b & bit:
                sign = _jw_sign(b, i)
                a_data[(b ^ bit, b)] = Fraction(sign)
                c_data[(b, b ^ bit)] = Fraction(sign)
        ann.append(SparseOp(dim, a_data))
        cre.append(SparseOp(dim, c_data))
    return ann, cre


def anticommutator(x: SparseOp, y: SparseOp) -> SparseOp:
    return x * y + y * x


def commutator(x: SparseOp, y: SparseOp) -> SparseOp:
    return x * y - y * x


def composite_generators(n: int) -> dict:
    """E^i_j = adag_i a_j, the number operator N, and the totally
    antisymmetric triple composites Q_{ijk}, Qbar^{ijk} (keys: all index
    triples, 1-based)."""
    if n < 3:
        raise ValueError("composite triples need n >= 3")
    ann, cre = fermion_ops(n)
    dim = 1 << n
    e = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            e[(i, j)] = cre[i - 1] * ann[j - 1]
    num = SparseOp(dim)
    for i in range(1, n + 1):
        num = num + e[(i, i)]
    q = {}
    qbar = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                q[(i, j, k)] = ann[i - 1] * ann[j - 1] * ann[k - 1]
                qbar[(i, j, k)] = cre[i - 1] * cre[j - 1] * cre[k - 1]
    return {"n": n, "dim": dim, "a": ann, "adag": cre, "E": e, "N": num,
            "Q": q, "Qbar": qbar}


def _script_e(gens: dict, upper: Tuple[int, int, int], lower: Tuple[int, int, int]) -> SparseOp:
    """Component of the antisymmetrized adjoint array: both index triples
    antisymmetrized with weight 1/3!, which collapses to 18 unit-coefficient
    terms (signed pairings of the triples, E in each of the three slots)."""
    dim, e = gens["dim"], gens["E"]
    out = SparseOp(dim)
    for perm in permutations(range(3)):
        sign = _perm_sign(perm)
        low = tuple(lower[p] for p in perm)
        for t in range(3):
            deltas_ok = all(upper[s] == low[s] for s in range(3) if s != t)
            if deltas_ok:
                out = out + e[(upper[t], low[t])] * Fraction(sign)
    return out


def _asym_delta(upper: Tuple[int, int, int], lower: Tuple[int, int, int]) -> Fraction:
    """Antisymmetrized unit: signed sum over pairings of the two triples
    (6 terms); equals 1 on matching ordered triples."""
    total = Fraction(0)
    for perm in permutations(range(3)):
        low = tuple(lower[p] for p in perm)
        if all(upper[s] == low[s] for s in range(3)):
            total += Fraction(_perm_sign(perm))
    return total


def _perm_sign(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
              if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def bracket_polynomial_check(n: int = 4) -> dict:
    """Verify {Q_{ijk}, Qbar^{pqr}} = -3/2 (E_script^2 - (n+3-N) E_script
    + 4 delta) component-wise as exact matrices.

    If the identity instead holds with a constant overall rational factor
    on the right side, the factor is recorded in the report rather than
    silently rescaled.
    """
    gens = composite_generators(n)
    dim = gens["dim"]
    num = gens["N"]
    triples = list(combinations(range(1, n + 1), 3))
    script = {(u, l): _script_e(gens, u, l) for u in triples for l in triples}
    # (E_script^2): matrix product over the ordered-triple basis
    script2 = {}
    for u in triples:
        for l in triples:
            acc = SparseOp(dim)
            for m in triples:
                acc = acc + script[(u, m)] * script[(m, l)]
            script2[(u, l)] = acc
    coeff = SparseOp.identity(dim) * Fraction(n + 3) - num
    lhs = {}
    rhs = {}
    for u in triples:
        for l in triples:
            lhs[(u, l)] = anticommutator(gens["Q"][l], gens["Qbar"][u])
            rhs[(u, l)] = (script2[(u, l)] - coeff * script[(u, l)]
                           + SparseOp.identity(dim) * (4 * _asym_delta(u, l))) * Fraction(-3, 2)
    exact = all((lhs[key] - rhs[key]).is_zero() for key in lhs)
    factor = None
    if not exact:
        # probe for a constant overall factor lhs = factor * rhs
        for key in lhs:
            l_op, r_op = lhs[key], rhs[key]
            if r_op.is_zero():
                if not l_op.is_zero():
                    factor = None
                    break
                continue
            k0, v0 = next(iter(sorted(r_op.data.items())))
            cand = l_op.data.get(k0, Fraction(0)) / v0
            if (l_op - r_op * cand).is_zero() and (factor is None or factor == cand):
                factor = cand
            else:
                factor = None
                break
    return {
        "n": n,
        "holds": exact,
        "overall_factor": Fraction(1) if exact else factor,
        "components_checked": len(lhs),
    }


def occupation_basis(n: int, k: int) -> List[int]:
    """Bitmask basis states with exactly k occupied modes."""
    return [b for b in range(1 << n) if bin(b).count("1") == k]


def zero_step_demo(n: int = 4) -> dict:
    """Exact demonstration that the occupation-2 states of the n=4
    realization form a zero-step module: all triple composites annihilate
    the subspace, and the antisymmetrized adjoint array restricted there
    satisfies (M-1)(M-4) = 0 with both roots attained."""
    gens = composite_generators(n)
    basis2 = occupation_basis(n, 2)
    killed_q = all(
        all(op.apply_basis(b) == {} for b in basis2) for op in gens["Q"].values()
    )
    killed_qbar = all(
        all(op.apply_basis(b) == {} for b in basis2) for op in gens["Qbar"].values()
    )
    triples = list(combinations(range(1, n + 1), 3))
    # block matrix of the adjoint array on (ordered triples) x (occ-2 states)
    size = len(triples) * len(basis2)
    pos = {b: i for i, b in enumerate(basis2)}
    big = [[Fraction(0)] * size for _ in range(size)]
    for ui, u in enumerate(triples):
        for li, l in enumerate(triples):
            block = _script_e(gens, u, l)
            for (r, c), val in block.data.items():
                if c in pos:
                    if r not in pos:
                        raise ValueError("adjoint array does not preserve the subspace")
                    big[ui * len(basis2) + pos[r]][li * len(basis2) + pos[c]] = val
    ident = [[Fraction(1) if i == j else Fraction(0) for j in range(size)]
             for i in range(size)]
    m1 = _mat_sub(big, _mat_scale(ident, Fraction(1)))
    m4 = _mat_sub(big, _mat_scale(ident, Fraction(4)))
    prod = _mat_mul(m1, m4)
    annihilated = all(all(v == 0 for v in row) for row in prod)
    root1_attained = any(any(v != 0 for v in row) for row in m4)
    root4_attained = any(any(v != 0 for v in row) for row in m1)
    # right side of the displayed bracket with N -> 2: -3/2 (M^2 - 5M + 4)
    rhs_vanishes = annihilated and (n + 3 - 2 == 5)
    return {
        "n": n,
        "occ2_dimension": len(basis2),
        "q_annihilates": killed_q,
        "qbar_annihilates": killed_qbar,
        "restricted_dimension": size,
        "char_identity_holds": annihilated,
        "roots": (1, 4),
        "root_1_attained": root1_attained,
        "root_4_attained": root4_attained,
        "rhs_vanishes": rhs_vanishes,
        "passed": killed_q and killed_qbar and annihilated
        and root1_attained and root4_attained and rhs_vanishes,
    }


def lambda3_presentation():
    """Quadratic-superalgebra presentation of the n=4 triple-composite
    algebra: evens E^i_j (gl(4)), odds Qbar^{ijk} and Q_{ijk} over ordered
    triples, with the odd-odd bracket read off from the verified matrix
    identity {Q, Qbar} = -1/4 (E_script^2 - (n+3-<E>) E_script + 4 delta).
    """
    from .presentation import QlsPresentation

    n = 4
    triples = list(combinations(range(1, n + 1), 3))
    tpos = {u: t for t, u in enumerate(triples)}

    def eid(i, j):
        return n * (i - 1) + (j - 1)

    names = ([f"E{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
             + ["Qbar" + "".join(map(str, u)) for u in triples]
             + ["Q" + "".join(map(str, u)) for u in triples])

    c_tensor: Dict[tuple, Fraction] = {}
    for ai in range(1, n + 1):
        for bi in range(1, n + 1):
            for ci in range(1, n + 1):
                for di in range(1, n + 1):
                    i, j = eid(ai, bi), eid(ci, di)
                    if bi == ci:
                        key = (i, j, eid(ai, di))
                        c_tensor[key] = c_tensor.get(key, Fraction(0)) + 1
                    if di == ai:
                        key = (i, j, eid(ci, bi))
                        c_tensor[key] = c_tensor.get(key, Fraction(0)) - 1
    c_tensor = {k: v for k, v in c_tensor.items() if v}

    def sorted_signed(tri):
        if len(set(tri)) < 3:
            return None, 0
        perm = sorted(range(3), key=lambda t: tri[t])
        return tuple(tri[t] for t in perm), _perm_sign(perm)

    cbar: Dict[tuple, Fraction] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for u in triples:
                # [E^i_j, Qbar^U] replaces an index equal to j by i
                for t in range(3):
                    if u[t] == j:
                        new = list(u)
                        new[t] = i
                        tgt, sign = sorted_signed(tuple(new))
                        if sign:
                            key = (eid(i, j), tpos[u], tpos[tgt])
                            cbar[key] = cbar.get(key, Fraction(0)) + sign
                # [E^i_j, Q_U] = - (index equal to i replaced by j)
                for t in range(3):
                    if u[t] == i:
                        new = list(u)
                        new[t] = j
                        tgt, sign = sorted_signed(tuple(new))
                        if sign:
                            key = (eid(i, j), 4 + tpos[u], 4 + tpos[tgt])
                            cbar[key] = cbar.get(key, Fraction(0)) - sign
    cbar = {k: v for k, v in cbar.items() if v}

    # The 16-dimensional Fock module is not faithful on quadratic Casimir
    # combinations, so the odd-odd tensors cannot be read off the matrix
    # bracket alone: many tensor choices reproduce the same matrices but
    # violate the graded Jacobi identities.  Instead build d, b through the
    # balanced pairing between the two odd blocks from invariant 2- and
    # 3-tensors (trace monomials in E, symmetrized in the two quadratic
    # slots).  The coefficients below are the unique ones for which the
    # presentation both reproduces the matrix bracket exactly and passes
    # the Jacobi identities.
    from .presentation import BalancedData, build_from_casimirs
    from .scalars import Scalar

    ne, mo = n * n, 2 * len(triples)
    pi = [[[Scalar() for _ in range(mo)] for _ in range(mo)] for _ in range(ne)]
    for (i1, p1, q1), val in cbar.items():
        pi[i1][p1][q1] = pi[i1][p1][q1] - val
    omega = [[Fraction(0)] * mo for _ in range(mo)]
    for t in range(len(triples)):
        omega[t][len(triples) + t] = Fraction(1)
        omega[len(triples) + t][t] = Fraction(-1)
    bal = BalancedData(pi, omega)

    c3: Dict[tuple, Fraction] = {}
    c2: Dict[tuple, Fraction] = {}

    def add(tensor, key, val):
        tensor[key] = tensor.get(key, Fraction(0)) + val

    k1, k2, k3, k4 = (Fraction(-3, 4), Fraction(1, 8),
                      Fraction(1, 8), Fraction(-1, 24))
    l1, l2 = Fraction(1, 4), Fraction(-1, 12)
    rng = range(1, n + 1)
    for i in rng:
        for j in rng:
            for k in rng:
                # tr(EEE), tr(EE)tr(E), tr(E)tr(EE), tr(E)^3
                add(c3, (eid(i, j), eid(j, k), eid(k, i)), k1 / 2)
                add(c3, (eid(i, j), eid(k, i), eid(j, k)), k1 / 2)
                add(c3, (eid(i, j), eid(j, i), eid(k, k)), k2)
                add(c3, (eid(i, j), eid(k, k), eid(j, i)), k2)
                add(c3, (eid(k, k), eid(i, j), eid(j, i)), k3)
                add(c3, (eid(i, i), eid(j, j), eid(k, k)), k4)
    for i in rng:
        for j in rng:
            add(c2, (eid(i, j), eid(j, i)), l1)  # tr(EE)
            add(c2, (eid(i, i), eid(j, j)), l2)  # tr(E)^2
    c3 = {k: v for k, v in c3.items() if v}
    c2 = {k: v for k, v in c2.items() if v}
    b_tensor, d_tensor = build_from_casimirs(c_tensor, c2, c3, bal)

    a_tensor: Dict[tuple, Fraction] = {}
    for t in range(len(triples)):
        a_tensor[(t, len(triples) + t)] = Fraction(-1)
        a_tensor[(len(triples) + t, t)] = Fraction(-1)

    return QlsPresentation(ne, mo, c=c_tensor, cbar=cbar,
                           d=d_tensor, b=b_tensor, a=a_tensor, names=names)


def presentation_cross_check() -> dict:
    """Verify every defining relation of the triple-composite presentation
    as an exact matrix identity in the n=4 Fock realization."""
    pres = lambda3_presentation()
    n = 4
    gens = composite_generators(n)
    dim = gens["dim"]
    triples = list(combinations(range(1, n + 1), 3))
    mats: List[SparseOp] = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            mats.append(gens["E"][(i, j)])
    for u in triples:
        mats.append(gens["Qbar"][u])
    for u in triples:
        mats.append(gens["Q"][u])

    def srat_val(s) -> Fraction:
        return s.as_rational()

    failures = []
    ne, mo = pres.n_even, pres.m_odd
    # even-even commutators
    for i in range(ne):
        for j in range(ne):
            rhs = SparseOp(dim)
            for (a1, b1, k1), val in pres.c.items():
                if (a1, b1) == (i, j):
                    rhs = rhs + mats[k1] * srat_val(val)
            if commutator(mats[i], mats[j]) != rhs:
                failures.append(("ee", i, j))
    # even-odd commutators
    for i in range(ne):
        for p in range(mo):
            rhs = SparseOp(dim)
            for (a1, p1, q1), val in pres.cbar.items():
                if (a1, p1) == (i, p):
                    rhs = rhs + mats[ne + q1] * srat_val(val)
            if commutator(mats[i], mats[ne + p]) != rhs:
                failures.append(("mx", i, p))
    # odd-odd anticommutators: {y_p, y_q} = d_pq^{ab} x_a x_b + b_pq^k x_k + a_pq
    for p in range(mo):
        for q in range(mo):
            rhs = SparseOp(dim)
            for (p1, q1, a1, b1), val in pres.d.items():
                if (p1, q1) == (p, q):
                    rhs = rhs + mats[a1] * mats[b1] * srat_val(val)
            for (p1, q1, k1), val in pres.b.items():
                if (p1, q1) == (p, q):
                    rhs = rhs + mats[k1] * srat_val(val)
            aval = pres.a.get((p, q))
            if aval is not None:
                rhs = rhs + SparseOp.identity(dim) * srat_val(aval)
            if anticommutator(mats[ne + p], mats[ne + q]) != rhs:
                failures.append(("oo", p, q))
    return {"n": n, "relations_hold": not failures, "failures": failures,
            "presentation": pres}


def _mat_mul(a, b):
    size = len(a)
    out = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        ai = a[i]
        for k in range(size):
            v = ai[k]
            if v:
                bk = b[k]
                row = out[i]
                for j in range(size):
                    if bk[j]:
                        row[j] += v * bk[j]
    return out


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_scale(a, s):
    return [[x * s for x in row] for row in a]
