"""Normal-ordering rewrite engine for enveloping algebras of quadratic
graded presentations.

A RewriteSystem pairs a presentation with a total generator order.  The
order is *admissible* when every even pair in the support of the d-tensor
strictly precedes the odd pair it rewrites to; under an admissible order
the ordered monomials (evens weakly increasing, odds strictly increasing)
form a basis and `normal_form` computes coordinates in it.

Also provided: a Serre-style module-action verifier (the action on the
free span of ordered words must satisfy the defining relations; this is
equivalent to the Jacobi identities of the presentation), a witness of
linear dependence for inadmissible orders, and ordered-monomial counting.
"""

from __future__ import annotations

from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .ncpoly import Alphabet, NCPoly, Word
from .presentation import QlsPresentation
from .scalars import Scalar, srat


class GeneratorOrder:
    """Total order on generators, given as a sequence from least to greatest."""

    def __init__(self, sequence: Sequence[int]):
        self.sequence = tuple(sequence)
        if sorted(self.sequence) != list(range(len(self.sequence))):
            raise ValueError("order must be a permutation of 0..size-1")
        self.position = {g: i for i, g in enumerate(self.sequence)}

    @staticmethod
    def default(alphabet: Alphabet) -> "GeneratorOrder":
        return GeneratorOrder(range(alphabet.size))

    def pos(self, g: int) -> int:
        return self.position[g]

    def __eq__(self, other):
        if not isinstance(other, GeneratorOrder):
            return NotImplemented
        return self.sequence == other.sequence

    def __hash__(self):
        return hash(self.sequence)

    def __repr__(self):
        return f"GeneratorOrder({self.sequence})"


def check_admissible(
    pres: QlsPresentation, order: GeneratorOrder
) -> Tuple[bool, Optional[Tuple[int, int, int, int]]]:
    """True iff every d-entry's even pair strictly precedes its odd pair.

    On failure returns the first violating d-index (p, q, k, l).
    """
    ab = pres.alphabet
    if len(order.sequence) != ab.size:
        raise ValueError("order size does not match the presentation")
    for (p, q, k, l) in sorted(pres.d):
        odd_pos = (order.pos(ab.odd(p)), order.pos(ab.odd(q)))
        even_pos = (order.pos(ab.even(k)), order.pos(ab.even(l)))
        if not all(e < o for e in even_pos for o in odd_pos):
            return False, (p, q, k, l)
    return True, None


class RewriteSystem:
    """Immutable presentation + generator order; caches admissibility and
    normal forms."""

    def __init__(self, pres: QlsPresentation, order: Optional[GeneratorOrder] = None):
        self.presentation = pres
        self.order = order if order is not None else GeneratorOrder.default(pres.alphabet)
        self.admissible, self.admissibility_witness = check_admissible(
            pres, self.order
        )
        self._nf_cache: Dict[Word, NCPoly] = {}
        self._rules = self._build_rules()

    # replacement table: unordered adjacent pair -> list of (middle word, coeff)
    def _build_rules(self):
        ab = self.presentation.alphabet
        pres = self.presentation
        pos = self.order.pos
        rules: Dict[Tuple[int, int], List[Tuple[Word, Scalar]]] = {}
        size = ab.size
        for g1 in range(size):
            for g2 in range(size):
                if self.word_is_ordered((g1, g2)):
                    continue
                out: List[Tuple[Word, Scalar]] = []
                p1, p2 = ab.parity(g1), ab.parity(g2)
                if p1 == 0 and p2 == 0:
                    out.append(((g2, g1), srat(1)))
                    for (i, j, k), v in pres.c.items():
                        if (i, j) == (g1, g2):
                            out.append(((ab.even(k),), v))
                elif p1 == 0:
                    # x_i y_p = y_p x_i + cbar_ip^q y_q
                    out.append(((g2, g1), srat(1)))
                    for (i, p, q), v in pres.cbar.items():
                        if (i, p) == (g1, g2 - ab.n_even):
                            out.append(((ab.odd(q),), v))
                elif p2 == 0:
                    # y_p x_i = x_i y_p - cbar_ip^q y_q
                    out.append(((g2, g1), srat(1)))
                    for (i, p, q), v in pres.cbar.items():
                        if (i, p) == (g2, g1 - ab.n_even):
                            out.append(((ab.odd(q),), -v))
                else:
                    p, q = g1 - ab.n_even, g2 - ab.n_even
                    half = srat(1, 2) if p == q else srat(1)
                    if p != q:
                        out.append(((g2, g1), srat(-1)))
                    for (pp, qq, k, l), v in pres.d.items():
                        if (pp, qq) == (p, q):
                            out.append(((ab.even(k), ab.even(l)), v * half))
                    for (pp, qq, k), v in pres.b.items():
                        if (pp, qq) == (p, q):
                            out.append(((ab.even(k),), v * half))
                    av = pres.a.get((p, q))
                    if av is not None:
                        out.append(((), av * half))
                rules[(g1, g2)] = out
        return rules

    # -- ordering predicates ------------------------------------------

    def word_is_ordered(self, word: Word) -> bool:
        ab = self.presentation.alphabet
        pos = self.order.pos
        for g1, g2 in zip(word, word[1:]):
            if g1 == g2:
                if ab.parity(g1) == 1:
                    return False
            elif pos(g1) > pos(g2):
                return False
        return True

    def _measure(self, word: Word):
        # well-founded rewrite measure: (odd letters, length, inversions)
        ab = self.presentation.alphabet
        pos = self.order.pos
        odd = sum(1 for g in word if ab.parity(g) == 1)
        inv = sum(
            1
            for s in range(len(word))
            for t in range(s + 1, len(word))
            if pos(word[s]) > pos(word[t])
        )
        return (odd, len(word), inv)

    # -- normal forms -------------------------------------------------

    def _nf_word(self, word: Word) -> NCPoly:
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        ab = self.presentation.alphabet
        pos = self.order.pos
        spot = None
        for t, (g1, g2) in enumerate(zip(word, word[1:])):
            if (g1 == g2 and ab.parity(g1) == 1) or (g1 != g2 and pos(g1) > pos(g2)):
                spot = t
                break
        if spot is None:
            result = NCPoly.monomial(ab, word)
        else:
            prefix, suffix = word[:spot], word[spot + 2 :]
            measure = self._measure(word)
            result = NCPoly.zero(ab)
            for middle, coeff in self._rules[(word[spot], word[spot + 1])]:
                replacement = prefix + middle + suffix
                assert self._measure(replacement) < measure
                result = result + self._nf_word(replacement).scale(coeff)
        self._nf_cache[word] = result
        return result

    def normal_form(self, elem: NCPoly) -> NCPoly:
        if not self.admissible:
            raise ValueError(
                f"order is not admissible (witness d-index "
                f"{self.admissibility_witness}); normal forms not defined"
            )
        out = NCPoly.zero(self.presentation.alphabet)
        for word, coeff in elem.terms.items():
            out = out + self._nf_word(word).scale(coeff)
        return out


def normal_form(elem: NCPoly, rs: RewriteSystem) -> NCPoly:
    return rs.normal_form(elem)


def pbw_monomial_count(rs: RewriteSystem, degree: int) -> int:
    """Number of ordered monomials of exactly the given degree."""
    n = rs.presentation.n_even
    m = rs.presentation.m_odd
    return sum(
        (1 if j == 0 else comb(n + j - 1, j)) * comb(m, degree - j)
        for j in range(degree + 1)
        if 0 <= degree - j <= m and (n > 0 or j == 0)
    )


def inadmissible_dependence_witness(
    pres: QlsPresentation, order: GeneratorOrder
) -> NCPoly:
    """Degree-3 combination that vanishes in the enveloping algebra but is a
    nonzero sum of monomials over the inadmissible ordered set:

        0 = (1/2) d_aa^{cd} x_c x_d y_b + y_a y_b y_a - d_ab^{cd} y_a x_c x_d
    """
    ok, witness = check_admissible(pres, order)
    if ok:
        raise ValueError("order is admissible; no dependence witness exists")
    assert witness is not None
    p, q, _, _ = witness
    ab = pres.alphabet
    ya, yb = ab.odd(p), ab.odd(q)
    out = NCPoly.monomial(ab, (ya, yb, ya))
    for (pp, qq, k, l), v in pres.d.items():
        if (pp, qq) == (p, p):
            out = out + NCPoly.monomial(
                ab, (ab.even(k), ab.even(l), yb), v / 2
            )
        if (pp, qq) == (p, q):
            out = out - NCPoly.monomial(ab, (ya, ab.even(k), ab.even(l)), v)
    return out


class _ModuleAction:
    """Serre-style action of generators on the free span of ordered words."""

    def __init__(self, rs: RewriteSystem, max_len: int):
        self.rs = rs
        self.max_len = max_len
        self.ab = rs.presentation.alphabet
        self.pos = rs.order.pos
        self._cache: Dict[Tuple[int, Word], Dict[Word, Scalar]] = {}
        # lower-order bracket data for unordered pairs, mirroring the
        # rewrite rules but acting on basis vectors z_N
        self._lower: Dict[Tuple[int, int], List[Tuple[Word, Scalar]]] = {}
        for (g1, g2), rule in rs._rules.items():
            self._lower[(g1, g2)] = [
                (mid, coeff) for mid, coeff in rule if mid not in ((g2, g1),)
            ]

    def _precedes(self, a: int, word: Word) -> bool:
        if not word:
            return True
        if a == word[0]:
            return self.ab.parity(a) == 0
        return self.pos(a) < self.pos(word[0])

    def act(self, a: int, word: Word) -> Dict[Word, Scalar]:
        key = (a, word)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        out: Dict[Word, Scalar] = {}

        def bump(w, v):
            prev = out.get(w)
            new = v if prev is None else prev + v
            if new.is_zero():
                out.pop(w, None)
            else:
                out[w] = new

        if self._precedes(a, word):
            bump((a,) + word, srat(1))
        else:
            b, rest = word[0], word[1:]
            if a == b:  # odd square: no swap term
                for mid, coeff in self._lower[(a, b)]:
                    for w2, v2 in self.apply_word(mid, rest).items():
                        bump(w2, v2 * coeff)
            else:
                sign = (
                    -1
                    if self.ab.parity(a) == 1 and self.ab.parity(b) == 1
                    else 1
                )
                inner = self.act(a, rest)
                for w1, v1 in inner.items():
                    for w2, v2 in self.act(b, w1).items():
                        bump(w2, v2 * v1 * sign)
                for mid, coeff in self._lower[(a, b)]:
                    for w2, v2 in self.apply_word(mid, rest).items():
                        bump(w2, v2 * coeff)
        self._cache[key] = out
        return out

    def apply_word(self, gens: Word, word: Word) -> Dict[Word, Scalar]:
        """Act with w_{gens[0]} ... w_{gens[-1]} on z_word."""
        dist: Dict[Word, Scalar] = {word: srat(1)}
        for g in reversed(gens):
            nxt: Dict[Word, Scalar] = {}
            for w, v in dist.items():
                for w2, v2 in self.act(g, w).items():
                    prev = nxt.get(w2)
                    new = v * v2 if prev is None else prev + v * v2
                    if new.is_zero():
                        nxt.pop(w2, None)
                    else:
                        nxt[w2] = new
            dist = nxt
        return dist


def serre_module_check(
    rs: RewriteSystem, max_len: int = 4
) -> Tuple[bool, Optional[Tuple[int, int, Word]]]:
    """Verify the defining relations on the module of ordered words.

    Checks w_a w_b z_N = (sign) w_b w_a z_N + (lower-order terms) z_N for
    all generator pairs and all ordered words N of length <= max_len - 2.
    Returns (True, None) or (False, (a, b, N)) on the first failure.
    """
    if not rs.admissible:
        raise ValueError("module check requires an admissible order")
    ab = rs.presentation.alphabet
    pos = rs.order.pos
    action = _ModuleAction(rs, max_len)

    words: List[Word] = [()]
    frontier: List[Word] = [()]
    for _ in range(max(0, max_len - 2)):
        nxt = []
        for w in frontier:
            for g in range(ab.size):
                if action._precedes(g, w):
                    nxt.append((g,) + w)
        words += nxt
        frontier = nxt

    pairs = [
        (a, b)
        for a in range(ab.size)
        for b in range(ab.size)
        if pos(a) > pos(b) or (a == b and ab.parity(a) == 1)
    ]
    for nword in words:
        for a, b in pairs:
            lhs = action.apply_word((a, b), nword)
            sign = -1 if ab.parity(a) == 1 and ab.parity(b) == 1 else 1
            rhs: Dict[Word, Scalar] = {}

            def bump(w, v):
                prev = rhs.get(w)
                new = v if prev is None else prev + v
                if new.is_zero():
                    rhs.pop(w, None)
                else:
                    rhs[w] = new

            if a != b:
                for w, v in action.apply_word((b, a), nword).items():
                    bump(w, v * sign)
            # for an odd square the relation reads 2 w_a w_a z_N = (full
            # lower terms) z_N; the lower table already carries the 1/2
            # factor, so the swap contribution is dropped on both sides
            for mid, coeff in action._lower[(a, b)]:
                for w, v in action.apply_word(mid, nword).items():
                    bump(w, v * coeff)
            if lhs != rhs:
                return False, (a, b, nword)
    return True, None
