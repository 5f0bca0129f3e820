"""
Displayed ideals of the associated-prime computation and the chains that
relate them

DisplayBuilder extends FamilyBuilder with one constructor per displayed
ideal. A DisplayChain lists the steps of one registered identity check;
each adjacent pair of a displayed chain "A = B = C" is its own step, so a
failing manipulation is localized to one step.

Ideals are built lazily and memoized per builder. Colon ideals are
chained: K : b04^d c12 is computed from K : b04^d, and so on.
"""
import re
from dataclasses import dataclass
from enum import Enum
from functools import reduce, wraps
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..errors import FamilyError, UnknownCheckError
from ..ideals import Ideal, ideal_intersect, ideal_product, ideal_sum, principal, quotient_by_poly
from ..monitoring import monitoring
from ..poly import Polynomial, Ring
from ..scalars import Field
from .generators import INDICES, FamilyBuilder, FamilyParams, build_Kl, family_ring
from .primes import ALL_SUBSETS, NONEMPTY_SUBSETS, PrimeBuilder, Subset

logger = monitoring.get_logger(__name__)


def _memo(method):
    @wraps(method)
    def wrapper(self, *args):
        key = (method.__name__,) + args
        if key not in self._memo_cache:
            self._memo_cache[key] = method(self, *args)
        return self._memo_cache[key]
    return wrapper


def meet(*ideals: Ideal) -> Ideal:
    """Intersection of one or more ideals"""
    return reduce(ideal_intersect, ideals)


class Relation(Enum):
    EQUAL = "equal"
    CONTAINS = "contains"


@dataclass
class DisplayStep:
    """One adjacent pair of a displayed chain; CONTAINS asserts left ⊇ right"""
    label: str
    left: Callable[[], Ideal]
    right: Callable[[], Ideal]
    relation: Relation = Relation.EQUAL


class DisplayBuilder(FamilyBuilder):
    """FamilyBuilder with the displayed ideals of the decomposition"""

    def __init__(self, ring: Ring, n: int, d: int, offset: int = 0, literal: bool = False):
        super().__init__(ring, n, d, offset, literal)
        self.dd = d * d
        self._memo_cache: Dict[tuple, Ideal] = {}

    # Shorthand polynomials

    def b04d(self) -> Polynomial:
        return self.b(0, 4) ** self.d

    def b12dd(self) -> Polynomial:
        return self.b(1, 2) ** self.dd

    def quadric(self) -> Polynomial:
        """c12 b11 - c13 b14"""
        b, c = self.b, self.c
        return c(1, 2) * b(1, 1) - c(1, 3) * b(1, 4)

    def cross(self) -> Polynomial:
        """b11 b13^{d^2} - b14 b12^{d^2}"""
        b = self.b
        return b(1, 1) * b(1, 3) ** self.dd - b(1, 4) * self.b12dd()

    def b02_at(self, r: int, i: int) -> Polynomial:
        """b02 - b_{ri} b03"""
        return self.b(0, 2) - self.b(r, i) * self.b(0, 3)

    def b01_at(self, r: int, i: int) -> Polynomial:
        """b01 - b_{ri}^d b04"""
        return self.b(0, 1) - self.b(r, i) ** self.d * self.b(0, 4)

    def c_out(self, r: int, lam: Subset) -> List[Polynomial]:
        return [self.c(r, i) for i in INDICES if i not in lam]

    def b_pairs(self, r: int, lam: Sequence[int]) -> List[Polynomial]:
        return [self.b(r, i) - self.b(r, j) for i, j in combinations(lam, 2)]

    def c2_pairs(self) -> List[Polynomial]:
        """c2i c2j (b2i - b2j)"""
        b, c = self.b, self.c
        return [c(2, i) * c(2, j) * (b(2, i) - b(2, j)) for i, j in combinations(INDICES, 2)]

    def c2_slope(self) -> List[Polynomial]:
        """c2i (b12 - b2i b13)"""
        b, c = self.b, self.c
        return [c(2, i) * (b(1, 2) - b(2, i) * b(1, 3)) for i in INDICES]

    def geometric(self, x: Polynomial) -> Polynomial:
        """(1 - x^{d^2}) / (1 - x^d) = 1 + x^d + ... + x^{d(d-1)}"""
        total = self.one()
        for k in range(1, self.d):
            total = total + x ** (self.d * k)
        return total

    def _require_upper(self, what: str):
        if self.n < 3:
            raise FamilyError(f"{what} is displayed for n >= 3")

    # Shifted levels

    @_memo
    def level_shift(self) -> Ideal:
        """L1 + N1 of K(n-1, d^2); the zero ideal when n = 2"""
        if self.n < 3:
            return self.ideal([], 'L1+N1')
        _, N1, L1 = self.shifted().sublevels()
        return ideal_sum(L1, N1).named('L1+N1')

    @_memo
    def K1(self) -> Ideal:
        return self.shifted().K()

    # K + (b04^d)

    @_memo
    def K_ideal(self) -> Ideal:
        return self.K()

    @_memo
    def K_plus_b04(self) -> Ideal:
        return (self.K_ideal() + self.ideal([self.b04d()])).named('K+(b04^d)')

    @_memo
    def levels_plus_b04(self) -> Ideal:
        M, N, _ = self.sublevels()
        return ideal_sum(N, M, self.ideal([self.b04d()])).named('N+M+(b04^d)')

    @_memo
    def L_bound(self) -> Ideal:
        """C1 b04^d + M"""
        M, _, _ = self.sublevels()
        return (self.ideal([self.c(1, i) * self.b04d() for i in INDICES]) + M).named('C1 b04^d + M')

    @_memo
    def L_ideal(self) -> Ideal:
        return self.sublevels()[2]

    @_memo
    def sumdecomp_expanded(self) -> Ideal:
        b, c = self.b, self.c
        gens = [self.b04d(), self.g01()]
        for i in INDICES:
            gens += [c(1, i) * self.b02_at(1, i), c(1, i) * self.b01_at(1, i)]
        gens += [c(1, i) * c(1, j) * (b(1, i) - b(1, j)) for i, j in combinations(INDICES, 2)]
        return self.ideal(gens, 'sumdecomp')

    def _lambda_b1(self, lam: Subset) -> List[Polynomial]:
        gens = [g for i in lam for g in (self.b02_at(1, i), self.b01_at(1, i))]
        return gens + self.b_pairs(1, lam)

    @_memo
    def sumdecomp_part(self, lam: Subset) -> Ideal:
        gens = [self.b04d(), self.g01()] + self.c_out(1, lam) + self._lambda_b1(lam)
        return self.ideal(gens)

    @_memo
    def sumdecomp_components(self) -> Ideal:
        return meet(*[self.sumdecomp_part(lam) for lam in ALL_SUBSETS])

    @_memo
    def sumdecomp_split(self) -> Ideal:
        b, d = self.b, self.d
        parts = [self.ideal([self.b04d()] + self.c_out(1, lam) + self._lambda_b1(lam))
                 for lam in NONEMPTY_SUBSETS]
        C1 = self.C(1).generators
        parts.append(self.ideal(list(C1) + [b(0, 1) ** d, self.b04d(), self.g01()]))
        parts.append(self.ideal(list(C1) + [self.b04d(), b(0, 3) ** self.dd, self.g01()]))
        return meet(*parts)

    # K : b04^d

    @_memo
    def K_colon_b04(self) -> Ideal:
        return quotient_by_poly(self.K_ideal(), self.b04d()).named('K:b04^d')

    @_memo
    def rewritten_sum(self) -> Ideal:
        """L' + N' + M"""
        M, _, _ = self.sublevels()
        return ideal_sum(self.L_prime(), self.N_prime(), M).named("L'+N'+M")

    @_memo
    def colon_b04_split(self) -> Ideal:
        M, _, _ = self.sublevels()
        return ideal_sum(self.L_prime_over_b04(), self.N_prime_over_b04(),
                         quotient_by_poly(M, self.b04d()))

    def _c12_c2(self) -> List[Polynomial]:
        """c12 c2i (b12 - b2i b13); c12 (b12 - b13) when n = 2"""
        b, c = self.b, self.c
        if self.n >= 3:
            return [c(1, 2) * g for g in self.c2_slope()]
        self.level2_tail()  # raises in literal mode
        return [c(1, 2) * (b(1, 2) - b(1, 3))]

    @_memo
    def colon_b04_common(self) -> Ideal:
        b, c = self.b, self.c
        dd = self.dd
        gens = [c(1, 1) - self.b12dd() * c(1, 2), c(1, 4) - c(1, 1),
                b(1, 3) ** dd * c(1, 3) - self.b12dd() * c(1, 2),
                self.quadric(), self.g01()]
        gens += self._c12_c2()
        for i in INDICES:
            gens += [c(1, i) * self.b02_at(1, i), c(1, i) * self.b01_at(1, i)]
        gens += [c(1, i) * c(1, j) * (b(1, i) - b(1, j)) for i, j in combinations(INDICES, 2)]
        return self.ideal(gens)

    @_memo
    def colon_b04_display(self) -> Ideal:
        return (self.L_prime_over_b04() + self.colon_b04_common()).named('K:b04^d display')

    @_memo
    def colon_b04_reduced(self) -> Ideal:
        return (self.L_double_prime() + self.colon_b04_common()).named("K:b04^d with L''")

    @_memo
    def L_double_prime_factored(self) -> Ideal:
        return ideal_product(self.level_shift(), principal(self.c(1, 2) * self.b12dd()))

    # (K : b04^d) + (c12)

    @_memo
    def colon_b04_plus_c12(self) -> Ideal:
        return self.K_colon_b04() + self.ideal([self.c(1, 2)])

    @_memo
    def colon_b04_c12_sum(self) -> Ideal:
        b, c = self.b, self.c
        gens = [c(1, 1), c(1, 2), c(1, 4), self.g01()]
        gens += [c(1, 3) * g for g in (b(1, 3) ** self.dd, b(1, 4), self.b02_at(1, 3), self.b01_at(1, 3))]
        return self.ideal(gens)

    @_memo
    def colon_b04_c12_meet(self) -> Ideal:
        b, c = self.b, self.c
        first = self.C(1) + self.ideal([self.g01()])
        second = self.ideal([c(1, 1), c(1, 2), c(1, 4), b(1, 3) ** self.dd, b(1, 4),
                             self.b02_at(1, 3), self.b01_at(1, 3)])
        return meet(first, second)

    def prime(self, family_id: str, **kwargs) -> Ideal:
        return PrimeBuilder(self).build(family_id, **kwargs).ideal

    # K : b04^d c12, n >= 3

    @_memo
    def K_colon_b04c12(self) -> Ideal:
        return quotient_by_poly(self.K_colon_b04(), self.c(1, 2)).named('K:b04^d c12')

    @_memo
    def colon_b04c12_head(self) -> Ideal:
        b, c = self.b, self.c
        b12dd = self.b12dd()
        gens = [c(1, 1) - b12dd * c(1, 2), c(1, 4) - c(1, 1)] + self.c2_slope()
        gens += [self.b02_at(1, 2), self.b01_at(1, 2)]
        gens += [c(1, i) * (b(1, 2) - b(1, i)) for i in INDICES]
        gens += [b12dd * g for g in (self.b02_at(1, 1), self.b02_at(1, 4), self.b01_at(1, 1), self.b01_at(1, 4))]
        return ideal_product(self.level_shift(), principal(b12dd)) + self.ideal(gens)

    @_memo
    def W(self) -> Ideal:
        """The part of K : b04^d coloned by c12 in the long derivation"""
        b, c = self.b, self.c
        gens = [self.g01(), b(1, 3) ** self.dd * c(1, 3) - self.b12dd() * c(1, 2), self.quadric(),
                c(1, 3) * self.b02_at(1, 3), c(1, 3) * self.b01_at(1, 3)]
        return self.ideal(gens, 'W')

    def _X(self) -> List[Polynomial]:
        b, c = self.b, self.c
        return [b(1, 3) ** self.dd * c(1, 3) - self.b12dd() * c(1, 2), self.quadric(), self.cross(),
                self.b02_at(1, 3), self.b01_at(1, 3)]

    @_memo
    def W_meet(self) -> Ideal:
        b, c = self.b, self.c
        return meet(self.ideal(self._X()),
                    self.ideal([c(1, 3), self.b12dd() * c(1, 2), c(1, 2) * b(1, 1), self.g01()]))

    @_memo
    def W_colon(self) -> Ideal:
        return quotient_by_poly(self.W(), self.c(1, 2))

    @_memo
    def W_colon_meet(self) -> Ideal:
        b, c = self.b, self.c
        return meet(self.ideal(self._X()), self.ideal([c(1, 3), self.b12dd(), b(1, 1), self.g01()]))

    @_memo
    def W_colon_sum(self) -> Ideal:
        b, c = self.b, self.c
        X = self._X()
        head = self.ideal(X[:3] + [self.g01()])
        return head + ideal_product(self.ideal(X[3:]), self.ideal([c(1, 3), self.b12dd(), b(1, 1)]))

    @_memo
    def colon_b04c12_display(self) -> Ideal:
        return self.colon_b04c12_head() + self.W_colon()

    @_memo
    def colon_b04c12_expanded(self) -> Ideal:
        return self.colon_b04c12_head() + self.W_colon_sum()

    @_memo
    def colon_b04c12_final(self) -> Ideal:
        b, c, d = self.b, self.c, self.d
        b12dd = self.b12dd()
        gens = [c(1, 1) - b12dd * c(1, 2), c(1, 4) - c(1, 1)] + self.c2_slope()
        gens += [self.b02_at(1, 2), c(1, 2) * b12dd * (b(1, 2) - b(1, 1)), c(1, 3) * (b(1, 2) - b(1, 3)),
                 c(1, 2) * b12dd * (b(1, 2) - b(1, 4)), self.b01_at(1, 2)]
        for i in INDICES:
            gens += [b12dd * (b(1, 2) - b(1, i)) * b(0, 3),
                     b12dd * (b(1, 2) ** d - b(1, i) ** d) * b(0, 4)]
        gens.append(b12dd * (c(1, 3) - c(1, 2)))
        gens += [self.quadric(), self.cross(),
                 b(1, 1) * (b(1, 2) - b(1, 3)) * b(0, 3),
                 b(1, 1) * (b(1, 2) ** d - b(1, 3) ** d) * b(0, 4)]
        return ideal_product(self.level_shift(), principal(b12dd)) + self.ideal(gens)

    # (K : b04^d c12) + (b12^{d^2}) and V'

    @_memo
    def V_plus(self) -> Ideal:
        return self.K_colon_b04c12() + self.ideal([self.b12dd()])

    def _b11_tail(self) -> List[Polynomial]:
        b, d = self.b, self.d
        return [b(1, 1) * b(1, 3) ** self.dd, b(1, 1) * (b(1, 2) - b(1, 3)) * b(0, 3),
                b(1, 1) * (b(1, 2) ** d - b(1, 3) ** d) * b(0, 4)]

    @_memo
    def V_prime(self) -> Ideal:
        b, c = self.b, self.c
        gens = [self.b12dd(), c(1, 3) * (b(1, 2) - b(1, 3)), self.quadric()] + self.c2_slope()
        return self.ideal(gens + self._b11_tail(), "V'")

    @_memo
    def V_display(self) -> Ideal:
        c = self.c
        return self.V_prime() + self.ideal([c(1, 1), c(1, 4), self.b02_at(1, 2), self.b01_at(1, 2)])

    def _c2_unit(self, base: Polynomial) -> List[Polynomial]:
        """c2i base (1 - b2i)"""
        return [self.c(2, i) * base * (1 - self.b(2, i)) for i in INDICES]

    @_memo
    def V_prime_outer(self) -> Ideal:
        b = self.b
        return self.ideal([self.b12dd(), b(1, 2) - b(1, 3), self.quadric()] + self._c2_unit(b(1, 2)))

    @_memo
    def V_prime_first(self) -> Ideal:
        b, c, d = self.b, self.c, self.d
        inner = self.ideal([self.b12dd(), c(1, 3)] + self.c2_slope()
                           + [b(1, 1) * g for g in (c(1, 2), b(1, 3) ** self.dd, (b(1, 2) - b(1, 3)) * b(0, 3),
                                                    (b(1, 2) ** d - b(1, 3) ** d) * b(0, 4))])
        return meet(self.V_prime_outer(), inner)

    @_memo
    def V_redundant(self) -> Ideal:
        """The component shown to contain the first one"""
        b, c = self.b, self.c
        return self.ideal([self.b12dd(), c(1, 3), c(1, 2), b(1, 2) - b(1, 3)] + self._c2_unit(b(1, 2)))

    @_memo
    def V_prime_three(self) -> Ideal:
        b, c, d = self.b, self.c, self.d
        inner = self.ideal([self.b12dd(), c(1, 3)] + self.c2_slope()
                           + [b(1, 1) * g for g in (c(1, 2), b(1, 3) ** self.dd, b(0, 3),
                                                    (b(1, 2) ** d - b(1, 3) ** d) * b(0, 4))])
        return meet(self.V_prime_outer(), self.V_redundant(), inner)

    @_memo
    def V_part(self, k: int) -> Ideal:
        b, c, d = self.b, self.c, self.d
        if k == 1:
            gens = [self.b12dd(), b(1, 2) - b(1, 3), self.quadric()] + self._c2_unit(self.one())
        elif k == 2:
            gens = [b(1, 2), b(1, 3), self.quadric()]
        elif k == 3:
            gens = [self.b12dd(), c(1, 3), b(1, 1)] + self.c2_slope()
        else:
            gens = [self.b12dd(), c(1, 2), c(1, 3), b(1, 3) ** self.dd, b(0, 3),
                    (b(1, 2) ** d - b(1, 3) ** d) * b(0, 4)] + self.c2_slope()
        return self.ideal(gens, f"V{k}")

    @_memo
    def V_parts_meet(self) -> Ideal:
        return meet(*[self.V_part(k) for k in (1, 2, 3, 4)])

    @_memo
    def V1_components(self) -> Ideal:
        b = self.b
        base = [self.b12dd(), b(1, 2) - b(1, 3), self.quadric()]
        return meet(*[self.ideal(base + self.c_out(2, lam) + [1 - b(2, i) for i in lam])
                      for lam in ALL_SUBSETS])

    def _slope_in(self, lam: Sequence[int]) -> List[Polynomial]:
        """b12 - b2i b13 for i in lam"""
        b = self.b
        return [b(1, 2) - b(2, i) * b(1, 3) for i in lam]

    @_memo
    def V3_components(self) -> Ideal:
        b, c = self.b, self.c
        base = [self.b12dd(), c(1, 3), b(1, 1)]
        return meet(*[self.ideal(base + self.c_out(2, lam) + self._slope_in(lam)) for lam in ALL_SUBSETS])

    def _V3_first_family(self, pairs: bool) -> List[Ideal]:
        b, c = self.b, self.c
        base = [self.b12dd(), c(1, 3), b(1, 1)]
        parts = []
        for lam in ALL_SUBSETS:
            gens = base + self.c_out(2, lam) + self._slope_in(lam) + [b(2, i) ** self.dd for i in lam]
            if pairs:
                gens += self.b_pairs(2, lam)
            parts.append(self.ideal(gens))
        return parts

    def _V3_second_family(self) -> List[Ideal]:
        b, c = self.b, self.c
        base = [self.b12dd(), b(1, 3) ** self.dd, c(1, 3), b(1, 1)]
        return [self.ideal(base + self.c_out(2, lam) + self._slope_in(lam) + self.b_pairs(2, lam))
                for lam in NONEMPTY_SUBSETS]

    @_memo
    def V3_middle(self) -> Ideal:
        """Printed with b2i - b2i in its first family; read as b2i - b2j"""
        return meet(*self._V3_first_family(pairs=not self.literal), *self._V3_second_family())

    @_memo
    def V3_tail(self) -> Ideal:
        b, c = self.b, self.c
        return self.ideal([b(1, 2), b(1, 3), c(1, 3), b(1, 1)])

    @_memo
    def V3_final(self) -> Ideal:
        return meet(*self._V3_first_family(pairs=True), *self._V3_second_family(), self.V3_tail())

    def _V4_head(self, last: Polynomial) -> Ideal:
        b, c = self.b, self.c
        return self.ideal([self.b12dd(), c(1, 2), c(1, 3), b(1, 3) ** self.dd, b(0, 3), last]
                          + self.c2_slope())

    @_memo
    def V4_split(self) -> Ideal:
        """Printed with a line-leading intersection sign and no left operand"""
        if self.literal:
            raise FamilyError("The printed V4 split has an intersection without a left operand")
        b, d = self.b, self.d
        return meet(self._V4_head(b(1, 2) ** d - b(1, 3) ** d), self._V4_head(b(0, 4)))

    @_memo
    def V4_tails(self) -> Tuple[Ideal, Ideal]:
        b, c = self.b, self.c
        return (self.ideal([b(1, 2), b(1, 3), c(1, 2), c(1, 3), b(0, 3)]),
                self.ideal([b(1, 2), b(1, 3), c(1, 2), c(1, 3), b(0, 3), b(0, 4)]))

    @_memo
    def V4_final(self) -> Ideal:
        b, c, d, dd = self.b, self.c, self.d, self.dd
        parts = []
        for lam in ALL_SUBSETS:
            gens = [self.b12dd(), c(1, 2), c(1, 3), b(0, 3), b(1, 2) ** d - b(1, 3) ** d]
            gens += self.c_out(2, lam) + self._slope_in(lam) + self.b_pairs(2, lam)
            gens += [1 - b(2, i) ** d for i in lam]
            parts.append(self.ideal(gens))
        for lam in NONEMPTY_SUBSETS:
            gens = [b(1, 2) ** d, c(1, 2), c(1, 3), b(1, 3) ** d, b(0, 3)]
            parts.append(self.ideal(gens + self.c_out(2, lam) + self._slope_in(lam) + self.b_pairs(2, lam)))
        short_tail, long_tail = self.V4_tails()
        parts.append(short_tail)
        for lam in ALL_SUBSETS:
            gens = [self.b12dd(), c(1, 2), c(1, 3), b(1, 3) ** dd, b(0, 3), b(0, 4)]
            parts.append(self.ideal(gens + self.c_out(2, lam) + self._slope_in(lam) + self.b_pairs(2, lam)))
        parts.append(long_tail)
        return meet(*parts)

    # K : b04^d c12 b12^{d^2} and V-hat

    @_memo
    def K_colon_b04c12b12(self) -> Ideal:
        return quotient_by_poly(self.K_colon_b04c12(), self.b12dd()).named('K:b04^d c12 b12^{d^2}')

    def _colon_b12_head(self) -> Ideal:
        b, c, d = self.b, self.c, self.d
        gens = [c(1, 1) - self.b12dd() * c(1, 2), c(1, 4) - c(1, 1), self.b02_at(1, 2), self.b01_at(1, 2),
                c(1, 2) * (b(1, 2) - b(1, 1)), c(1, 2) * (b(1, 2) - b(1, 4)), c(1, 3) - c(1, 2)]
        for i in INDICES:
            gens += [(b(1, 2) - b(1, i)) * b(0, 3), (b(1, 2) ** d - b(1, i) ** d) * b(0, 4)]
        return self.level_shift() + self.ideal(gens)

    @_memo
    def V_hat(self) -> Ideal:
        b, c = self.b, self.c
        gens = self.c2_slope() + [c(1, 3) * (b(1, 2) - b(1, 3)), self.quadric(), self.cross()]
        return self.ideal(gens + self._b11_tail()[1:], 'Vhat')

    @_memo
    def V_hat_colon(self) -> Ideal:
        return quotient_by_poly(self.V_hat(), self.b12dd())

    @_memo
    def colon_b12_display(self) -> Ideal:
        return self._colon_b12_head() + self.V_hat_colon()

    def _hat_tail(self) -> List[Polynomial]:
        b, c = self.b, self.c
        return [c(1, 3), c(1, 2) * b(1, 1), self.cross()] + self._b11_tail()[1:]

    @_memo
    def V_hat_split(self) -> Ideal:
        b, c = self.b, self.c
        first = self.ideal([b(1, 2) - b(1, 3), self.quadric(), self.b12dd() * (b(1, 1) - b(1, 4))]
                           + self._c2_unit(b(1, 2)))
        second = self.ideal(self.c2_slope() + self._hat_tail())
        return meet(first, second)

    @_memo
    def V_hat_second(self) -> Ideal:
        return self.ideal(self.c2_slope() + self._hat_tail())

    @_memo
    def V_hat_second_part(self, lam: Subset) -> Ideal:
        return self.ideal(self._hat_tail() + self.c_out(2, lam) + self._slope_in(lam))

    @_memo
    def V_hat_second_components(self) -> Ideal:
        return meet(*[self.V_hat_second_part(lam) for lam in ALL_SUBSETS])

    @_memo
    def V_hat_empty_two(self) -> Ideal:
        b, c = self.b, self.c
        C2 = list(self.C(2).generators)
        return meet(self.ideal(C2 + [c(1, 3), b(1, 1), b(1, 4) * self.b12dd()]),
                    self.ideal(C2 + [c(1, 3), c(1, 2), self.cross()] + self._b11_tail()[1:]))

    def _empty_last(self) -> Ideal:
        b, c, d = self.b, self.c, self.d
        C2 = list(self.C(2).generators)
        return self.ideal(C2 + [c(1, 3), c(1, 2), self.cross(), b(0, 3) * b(1, 1),
                                (b(1, 2) ** d - b(1, 3) ** d) * b(0, 4) * b(1, 1)])

    @_memo
    def V_hat_empty_last(self) -> Ideal:
        return self._empty_last()

    @_memo
    def V_hat_empty_three(self) -> Ideal:
        b, c = self.b, self.c
        C2 = list(self.C(2).generators)
        return meet(self.ideal(C2 + [c(1, 3), b(1, 1), b(1, 4) * self.b12dd()]),
                    self.ideal(C2 + [c(1, 3), c(1, 2), (b(1, 1) - b(1, 4)) * self.b12dd(), b(1, 2) - b(1, 3)]),
                    self._empty_last())

    @_memo
    def V_hat_empty_last_split(self) -> Ideal:
        b, c, d = self.b, self.c, self.d
        C2 = list(self.C(2).generators)
        return meet(self.ideal(C2 + [c(1, 3), c(1, 2), (b(1, 1) - b(1, 4)) * self.b12dd(), b(0, 3),
                                     b(1, 2) ** d - b(1, 3) ** d]),
                    self.ideal(C2 + [c(1, 3), c(1, 2), self.cross(), b(0, 3), b(0, 4)]),
                    self.ideal(C2 + [c(1, 3), c(1, 2), b(1, 4) * self.b12dd(), b(1, 1)]))

    def _unit_slopes(self, lam: Sequence[int]) -> List[Polynomial]:
        """b11 - b14 b2i^{d^2}, (b2i - 1) b03 b14, (b2i^d - 1) b04 b14 for i in lam"""
        b, d = self.b, self.d
        gens = []
        for i in lam:
            gens += [b(1, 1) - b(1, 4) * b(2, i) ** self.dd, (b(2, i) - 1) * b(0, 3) * b(1, 4),
                     (b(2, i) ** d - 1) * b(0, 4) * b(1, 4)]
        return gens

    @_memo
    def colon_part(self, k: int) -> Ideal:
        """The single components P1, P3..P7 of V-hat : b12^{d^2}"""
        b, c, d = self.b, self.c, self.d
        C2 = list(self.C(2).generators)
        if k == 1:
            return self.ideal([b(1, 2) - b(1, 3), self.quadric(), b(1, 1) - b(1, 4)]
                              + self._c2_unit(self.one()), 'P1')
        gens = {
            3: [c(1, 3), b(1, 1), b(1, 4)],
            4: [c(1, 3), c(1, 2), b(1, 1) - b(1, 4), b(1, 2) - b(1, 3)],
            5: [c(1, 3), c(1, 2), b(1, 1) - b(1, 4), b(0, 3), b(1, 2) ** d - b(1, 3) ** d],
            6: [c(1, 3), c(1, 2), self.cross(), b(0, 3), b(0, 4)],
            7: [c(1, 3), c(1, 2), b(1, 4), b(1, 1)],
        }[k]
        return self.ideal(C2 + gens, f"P{k}")

    @_memo
    def colon_part_lambda(self, lam: Subset) -> Ideal:
        b, c = self.b, self.c
        gens = [c(1, 3), c(1, 2) * b(1, 4)] + self.c_out(2, lam) + self._slope_in(lam) + self.b_pairs(2, lam)
        return self.ideal(gens + self._unit_slopes(lam))

    @_memo
    def colon_parts_meet(self) -> Ideal:
        parts = [self.colon_part(1)] + [self.colon_part_lambda(lam) for lam in NONEMPTY_SUBSETS]
        parts += [self.colon_part(k) for k in (3, 4, 5, 6, 7)]
        return meet(*parts)

    def _E(self) -> List[Polynomial]:
        b, d = self.b, self.d
        return [self.cross(), b(0, 3) * (b(1, 1) - b(1, 4)), b(0, 4) * (b(1, 1) - b(1, 4)),
                b(0, 3) * b(1, 1) * (b(1, 2) - b(1, 3)), b(0, 4) * b(1, 4) * (b(1, 2) ** d - b(1, 3) ** d)]

    @_memo
    def last_two(self) -> Ideal:
        b, c = self.b, self.c
        C2 = list(self.C(2).generators)
        return self.ideal(C2 + [c(1, 3), c(1, 2), self.cross(), b(0, 3) * b(1, 1), b(0, 4) * b(1, 1),
                                b(0, 3) * b(1, 4), b(0, 4) * b(1, 4)])

    @_memo
    def preceding_two(self) -> Ideal:
        b, c, d = self.b, self.c, self.d
        C2 = list(self.C(2).generators)
        return self.ideal(C2 + [c(1, 3), c(1, 2), b(1, 1) - b(1, 4), b(0, 3) * (b(1, 2) - b(1, 3)),
                                b(1, 2) ** d - b(1, 3) ** d])

    @_memo
    def last_four(self) -> Ideal:
        c = self.c
        return self.ideal(list(self.C(2).generators) + [c(1, 3), c(1, 2)] + self._E())

    def _c12_pair(self) -> List[Polynomial]:
        b, c = self.b, self.c
        return [c(1, 2) * b(1, 1), c(1, 2) * b(1, 4)]

    @_memo
    def sixteen_part(self, lam: Subset) -> Ideal:
        b, c = self.b, self.c
        gens = [c(1, 3)] + self._E() + self._c12_pair() + self.c_out(2, lam) + self._slope_in(lam)
        return self.ideal(gens + self.b_pairs(2, lam) + self._unit_slopes(lam))

    def _c2_block(self) -> List[Polynomial]:
        b, c = self.b, self.c
        gens = list(self.c2_slope())
        for i in INDICES:
            gens += [c(2, i) * g for g in self._unit_slopes([i])]
        return gens + self.c2_pairs()

    @_memo
    def sixteen_meet(self) -> Ideal:
        return meet(*[self.sixteen_part(lam) for lam in ALL_SUBSETS])

    @_memo
    def sixteen_display(self) -> Ideal:
        return self.ideal([self.c(1, 3)] + self._E() + self._c12_pair() + self._c2_block())

    @_memo
    def V_hat_colon_final(self) -> Ideal:
        """The last summand is printed c12(b11 - b14, c12 b11 - c13 b14)"""
        b, c = self.b, self.c
        gens = self._E() + self._c2_block() + [c(1, 2) * (b(1, 1) - b(1, 4))]
        gens.append(c(1, 2) * self.quadric() if self.literal else self.quadric())
        gens += [c(1, 3) * g for g in self._c2_unit(self.one())]
        gens += [c(1, 3) * (b(1, 2) - b(1, 3)), c(1, 3) * (b(1, 1) - b(1, 4))]
        return self.ideal(gens)

    @_memo
    def colon_b12_long(self) -> Ideal:
        return self._colon_b12_head() + self.V_hat_colon_final()

    @_memo
    def colon_b12_short(self) -> Ideal:
        b, c, d = self.b, self.c, self.d
        gens = [c(1, 1) - self.b12dd() * c(1, 2), c(1, 4) - c(1, 1), c(1, 3) - c(1, 2),
                self.b02_at(1, 2), self.b01_at(1, 2)]
        for i in INDICES:
            gens += [c(1, 2) * (b(1, 2) - b(1, i)), (b(1, 2) - b(1, i)) * b(0, 3),
                     (b(1, 2) ** d - b(1, i) ** d) * b(0, 4)]
        gens += [self.cross(), (b(1, 1) - b(1, 4)) * b(0, 4)]
        gens += self.c2_slope() + self.c2_pairs()
        for i in INDICES:
            gens += [c(2, i) * (b(1, 1) - b(2, i) ** self.dd * b(1, 4)), c(2, i) * c(1, 2) * (1 - b(2, i))]
        return self.level_shift() + self.ideal(gens)

    # A, B, C, D

    def _ones(self, r: int, base: Polynomial) -> List[Polynomial]:
        """c_{ri} (1 - b_{ri}) scaled by base"""
        return [base * self.c(r, i) * (1 - self.b(r, i)) for i in INDICES]

    def _b12_equal(self) -> List[Polynomial]:
        b = self.b
        return [b(1, 2) - b(1, i) for i in INDICES]

    @_memo
    def A_colon(self) -> Ideal:
        return quotient_by_poly(self.K_colon_b04c12b12(), self.c(1, 2)).named('A')

    @_memo
    def A(self) -> Ideal:
        c = self.c
        gens = [c(1, 1) - self.b12dd() * c(1, 2), c(1, 4) - c(1, 1), c(1, 3) - c(1, 2),
                self.b02_at(1, 2), self.b01_at(1, 2)]
        gens += self._b12_equal() + self._ones(2, self.one())
        return (self.level_shift() + self.ideal(gens)).named('A')

    def _c2_mixed(self) -> List[Polynomial]:
        """c2i (b12 - b2i b13, c2j (b2i - b2j), b11 - b2i^{d^2} b14)"""
        b, c = self.b, self.c
        return self.c2_slope() + self.c2_pairs() + [c(2, i) * (b(1, 1) - b(2, i) ** self.dd * b(1, 4))
                                                    for i in INDICES]

    @_memo
    def BC_plus(self) -> Ideal:
        return self.K_colon_b04c12b12() + self.ideal([self.c(1, 2)])

    @_memo
    def BC_display(self) -> Ideal:
        b, d = self.b, self.d
        gens = [self.b02_at(1, 2), self.b01_at(1, 2)]
        for i in INDICES:
            gens += [(b(1, 2) - b(1, i)) * b(0, 3), (b(1, 2) ** d - b(1, i) ** d) * b(0, 4)]
        gens += self._c2_mixed() + [self.cross(), (b(1, 1) - b(1, 4)) * b(0, 4)]
        return self.level_shift() + self.C(1) + self.ideal(gens)

    @_memo
    def B_part(self) -> Ideal:
        gens = [self.b02_at(1, 2), self.b01_at(1, 2)] + self._b12_equal()
        gens += self._ones(2, self.b(1, 2)) + self.c2_pairs()
        return (self.level_shift() + self.C(1) + self.ideal(gens)).named('B')

    @_memo
    def C_prime(self) -> Ideal:
        b, d = self.b, self.d
        gens = [self.b01_at(1, 2), b(0, 2), b(0, 3)]
        gens += [(b(1, 2) ** d - b(1, i) ** d) * b(0, 4) for i in INDICES]
        gens += self._c2_mixed() + [self.cross(), (b(1, 1) - b(1, 4)) * b(0, 4)]
        return self.level_shift() + self.C(1) + self.ideal(gens)

    @_memo
    def C_part(self) -> Ideal:
        b, d = self.b, self.d
        gens = [self.b01_at(1, 2), b(0, 2), b(0, 3), b(1, 1) - b(1, 4)]
        gens += [b(1, 2) ** d - b(1, i) ** d for i in INDICES]
        return (self.level_shift() + self.C(1) + self.ideal(gens + self._c2_mixed())).named('C')

    @_memo
    def D_part(self) -> Ideal:
        gens = list(self.B0().generators) + [self.cross()] + self._c2_mixed()
        return (self.level_shift() + self.C(1) + self.ideal(gens)).named('D')

    @_memo
    def D_recursion(self) -> Ideal:
        return ideal_sum(self.K1(), self.C(1), self.B0()).named('K(n-1,d^2)+C1+B0')

    # U + (b11^{d^2})

    def b11dd(self) -> Polynomial:
        return self.b(1, 1) ** self.dd

    def _with_b11(self, U: Ideal) -> Ideal:
        return U + self.ideal([self.b11dd()])

    @_memo
    def A_plus_display(self) -> Ideal:
        c = self.c
        gens = [self.b11dd(), c(1, 1), c(1, 4) - c(1, 1), c(1, 3) - c(1, 2), self.b02_at(1, 2),
                self.b01_at(1, 2)] + self._b12_equal() + self._ones(2, self.one())
        return self.ideal(gens)

    @_memo
    def B_plus_display(self) -> Ideal:
        gens = [self.b11dd(), self.b02_at(1, 2), self.b01_at(1, 2)] + self._b12_equal()
        gens += self._ones(2, self.b(1, 2)) + self.c2_pairs()
        return self.C(1) + self.ideal(gens)

    @_memo
    def C_plus_display(self) -> Ideal:
        b, c, d = self.b, self.c, self.d
        gens = [self.b11dd(), self.b01_at(1, 2), b(0, 2), b(0, 3), b(1, 1) - b(1, 4)]
        gens += [b(1, 2) ** d - b(1, i) ** d for i in INDICES]
        gens += self.c2_slope() + self.c2_pairs()
        gens += [c(2, i) * b(1, 1) * (1 - b(2, i) ** self.dd) for i in INDICES]
        return self.C(1) + self.ideal(gens)

    # C + (b11^{d^2}) in few variables

    def _E_base(self) -> List[Polynomial]:
        b, d = self.b, self.d
        return [self.b11dd(), b(1, 2) ** d - b(1, 1) ** d, b(1, 2) ** d - b(1, 3) ** d]

    @_memo
    def C_reduced(self) -> Ideal:
        b, c = self.b, self.c
        gens = self._E_base() + self.c2_slope() + self.c2_pairs()
        gens += [c(2, i) * b(1, 1) * (1 - b(2, i) ** self.dd) for i in INDICES]
        return self.ideal(gens)

    @_memo
    def C_reduced_lifted(self) -> Ideal:
        b = self.b
        return self.C_reduced() + self.C(1) + self.ideal([self.b01_at(1, 2), b(0, 2), b(0, 3), b(1, 1) - b(1, 4)])

    @_memo
    def C_reduced_components(self) -> Ideal:
        b = self.b
        parts = []
        for lam in ALL_SUBSETS:
            gens = self._E_base() + self.c_out(2, lam) + self._slope_in(lam) + self.b_pairs(2, lam)
            gens += [b(1, 1) * (1 - b(2, i) ** self.dd) for i in lam]
            parts.append(self.ideal(gens))
        return meet(*parts)

    def _C_zero_part(self) -> Ideal:
        return self.C(2) + self.ideal(self._E_base())

    @_memo
    def C_reduced_middle(self) -> Ideal:
        b, d = self.b, self.d
        parts = [self._C_zero_part()]
        for lam in NONEMPTY_SUBSETS:
            gens = [self.b11dd(), b(1, 3) ** d - b(1, 1) ** d] + self.c_out(2, lam) + self._slope_in(lam)
            gens += self.b_pairs(2, lam)
            gens += [b(1, 1) * (1 - b(2, i) ** self.dd) for i in lam]
            gens += [b(1, 3) ** d * (b(2, i) ** d - 1) for i in lam]
            parts.append(self.ideal(gens))
        return meet(*parts)

    @_memo
    def C_reduced_final(self) -> Ideal:
        """
        The second family is printed after a line-leading intersection sign
        without an operator before it, and the third carries the quotient
        (1 - b2i^{d^2}) / (b2i^d - 1), read as 1 + b2i^d + ... + b2i^{d(d-1)}
        """
        if self.literal:
            raise FamilyError("The printed decomposition of C + (b11^{d^2}) is not a polynomial ideal")
        b, d = self.b, self.d
        parts = [self._C_zero_part()]
        for lam in NONEMPTY_SUBSETS:
            tail = self.c_out(2, lam) + self._slope_in(lam) + self.b_pairs(2, lam)
            parts.append(self.ideal([b(1, 1), b(1, 3) ** d] + tail))
            parts.append(self.ideal([b(1, 1) ** d, b(1, 3) ** d] + tail
                                    + [self.geometric(b(2, i)) for i in lam]))
            parts.append(self.ideal([self.b11dd(), b(1, 3) ** d - b(1, 1) ** d] + tail
                                    + [1 - b(2, i) ** d for i in lam]))
        return meet(*parts)

    # U : b11^{d^2}

    @_memo
    def shift_mod(self) -> Ideal:
        """(L1 + N1) + (b11^d - b14^d)"""
        b, d = self.b, self.d
        return self.level_shift() + self.ideal([b(1, 1) ** d - b(1, 4) ** d])

    @_memo
    def L_hat_scaled_mod(self) -> Ideal:
        b, d = self.b, self.d
        scaled = ideal_product(self.L_hat(), principal(self.b11dd()))
        return scaled + self.ideal([b(1, 1) ** d - b(1, 4) ** d])

    @_memo
    def L_hat_ideal(self) -> Ideal:
        return self.L_hat()

    def _c22_unit(self) -> List[Polynomial]:
        c = self.c
        return [c(2, 2) * (1 - self.b(2, i)) for i in INDICES]

    @_memo
    def A_colon_b11(self) -> Ideal:
        return quotient_by_poly(self.A(), self.b11dd())

    @_memo
    def A_colon_display(self) -> Ideal:
        c = self.c
        gens = [c(1, 1) - self.b12dd() * c(1, 2), c(1, 4) - c(1, 1), c(1, 3) - c(1, 2),
                self.b02_at(1, 2), self.b01_at(1, 2)] + self._b12_equal() + self._c22_unit()
        return self.L_hat() + self.ideal(gens)

    @_memo
    def A_colon_levels(self) -> Ideal:
        c = self.c
        common = [c(1, 1) - self.b12dd() * c(1, 2), c(1, 4) - c(1, 1), c(1, 3) - c(1, 2),
                  self.b02_at(1, 2), self.b01_at(1, 2)] + self._b12_equal()
        parts = [ideal_sum(self.D_range(t - 1), self.C(t), self.B(2, t - 1), self.ideal(common))
                 for t in range(2, self.n + 1)]
        return meet(*parts)

    @_memo
    def B_colon_b11(self) -> Ideal:
        return quotient_by_poly(self.B_part(), self.b11dd())

    @_memo
    def B_colon_display(self) -> Ideal:
        gens = [self.b02_at(1, 2), self.b01_at(1, 2)] + self._b12_equal() + self._c22_unit()
        return self.L_hat() + self.C(1) + self.ideal(gens)

    @_memo
    def C_colon_b11(self) -> Ideal:
        return quotient_by_poly(self.C_part(), self.b11dd())

    def _C_colon_base(self) -> List[Polynomial]:
        b, d = self.b, self.d
        return [self.b01_at(1, 2), b(0, 2), b(0, 3), b(1, 1) - b(1, 4)] + \
            [b(1, 2) ** d - b(1, i) ** d for i in INDICES]

    @_memo
    def C_colon_display(self) -> Ideal:
        b, c, d = self.b, self.c, self.d
        gens = self._C_colon_base()
        gens += [c(2, 2) * g for g in self._slope_in(INDICES)]
        gens += [c(2, 2) * g for g in self.b_pairs(2, INDICES)]
        gens += [c(2, 2) * (1 - b(2, i) ** d) for i in INDICES]
        return self.L_hat() + self.C(1) + self.ideal(gens)

    @_memo
    def C_colon_levels(self) -> Ideal:
        b, d = self.b, self.d
        parts = [self.C(1) + self.C(2) + self.ideal(self._C_colon_base())]
        upper = self._C_colon_base() + self._slope_in(INDICES) + self.b_pairs(2, INDICES)
        upper += [1 - b(2, i) ** d for i in INDICES]
        for t in range(3, self.n + 1):
            parts.append(ideal_sum(self.C(1), self.D_range(t - 1), self.C(t), self.B(3, t - 1),
                                   self.ideal(upper)))
        return meet(*parts)

    # n = 2

    def _n2_common(self) -> List[Polynomial]:
        b, c = self.b, self.c
        return [c(1, 1) - self.b12dd() * c(1, 2), c(1, 4) - c(1, 1), b(1, 2) - b(1, 3),
                self.b02_at(1, 2), self.b01_at(1, 2)]

    def _n2_slopes(self) -> List[Polynomial]:
        b, d = self.b, self.d
        gens = []
        for i in INDICES:
            gens += [(b(1, 2) - b(1, i)) * b(0, 3), (b(1, 2) ** d - b(1, i) ** d) * b(0, 4)]
        return gens

    @_memo
    def n2_colon_first(self) -> Ideal:
        b, c, d = self.b, self.c, self.d
        b01d = b(0, 1) ** d
        inner = [self.b04d() * c(1, 1) - b01d * c(1, 2), b01d * (c(1, 3) - c(1, 2)), c(1, 3) - c(1, 2)]
        gens = [self.b12dd() * g for g in inner + self._n2_slopes()]
        gens += self._n2_common()
        gens += [c(1, 2) * self.b12dd() * (b(1, 2) - b(1, 1)), c(1, 2) * self.b12dd() * (b(1, 2) - b(1, 4)),
                 self.quadric(), self.cross()]
        return self.ideal(gens)

    @_memo
    def n2_colon_second(self) -> Ideal:
        b, c = self.b, self.c
        inner = [(b(1, 2) - b(1, 1)) * c(1, 2), b(1, 1) - b(1, 4), c(1, 3) - c(1, 2)] + self._n2_slopes()
        gens = [self.b12dd() * g for g in inner] + self._n2_common() + [self.quadric()]
        return self.ideal(gens)

    @_memo
    def n2_plus_b12(self) -> Ideal:
        b, c = self.b, self.c
        return self.ideal([self.b12dd(), c(1, 1), c(1, 4), b(1, 2) - b(1, 3), self.b02_at(1, 2),
                           self.b01_at(1, 2), self.quadric()])

    @_memo
    def n2_colon_b12_first(self) -> Ideal:
        b, c = self.b, self.c
        gens = [(b(1, 2) - b(1, 1)) * c(1, 2), b(1, 1) - b(1, 4), c(1, 3) - c(1, 2)] + self._n2_slopes()
        return self.ideal(gens + self._n2_common() + [self.quadric()])

    @_memo
    def n2_colon_b12_second(self) -> Ideal:
        """Printed with the comma after b11 - b14 missing"""
        b, c, d = self.b, self.c, self.d
        gens = [(b(1, 2) - b(1, 1)) * c(1, 2), c(1, 3) - c(1, 2)]
        if self.literal:
            gens += [b(1, 1) - b(1, 4) * (b(1, 2) - b(1, i)) * b(0, 3) for i in INDICES]
        else:
            gens += [b(1, 1) - b(1, 4)] + [(b(1, 2) - b(1, i)) * b(0, 3) for i in INDICES]
        gens += [(b(1, 2) ** d - b(1, i) ** d) * b(0, 4) for i in INDICES]
        return self.ideal(gens + self._n2_common())

    @_memo
    def n2_part(self, k: int) -> Ideal:
        b, c, d = self.b, self.c, self.d
        if k == 1:
            return self.ideal(self._b12_equal() + [c(1, 3) - c(1, 2), c(1, 1) - self.b12dd() * c(1, 2),
                                                   c(1, 4) - c(1, 1), self.b02_at(1, 2), self.b01_at(1, 2)])
        C1 = list(self.C(1).generators)
        gens = {
            2: [b(1, 1) - b(1, 4), b(1, 2) - b(1, 3), self.b02_at(1, 2), self.b01_at(1, 2),
                (b(1, 2) - b(1, 1)) * b(0, 3), (b(1, 2) ** d - b(1, 1) ** d) * b(0, 4)],
            3: [b(1, 1) - b(1, i) for i in INDICES] + [self.b02_at(1, 2), self.b01_at(1, 2)],
            4: [b(1, 1) - b(1, 4), b(1, 2) - b(1, 3), b(0, 2), b(0, 3), self.b01_at(1, 2),
                (b(1, 2) ** d - b(1, 1) ** d) * b(0, 4)],
            5: [b(1, 1) - b(1, 4), b(1, 2) - b(1, 3), b(0, 2), b(0, 3), self.b01_at(1, 2),
                b(1, 2) ** d - b(1, 1) ** d],
            6: [b(1, 1) - b(1, 4), b(1, 2) - b(1, 3)] + list(self.B0().generators),
        }[k]
        return self.ideal(C1 + gens)

    @_memo
    def n2_parts(self, ks: Tuple[int, ...]) -> Ideal:
        return meet(*[self.n2_part(k) for k in ks])


def display_builder(params: FamilyParams, field: Optional[Field] = None, literal: bool = False) -> DisplayBuilder:
    return DisplayBuilder(family_ring(params.n, field), params.n, params.d, 0, literal)


# Chains


def _step(label: str, left: Callable[[], Ideal], right: Callable[[], Ideal],
          relation: Relation = Relation.EQUAL) -> DisplayStep:
    return DisplayStep(label, left, right, relation)


def _sumdecomp(x: DisplayBuilder) -> List[DisplayStep]:
    return [
        _step("C1 b04^d + M contains L", x.L_bound, x.L_ideal, Relation.CONTAINS),
        _step("K + (b04^d) = N + M + (b04^d)", x.K_plus_b04, x.levels_plus_b04),
        _step("N + M + (b04^d) = expanded sum", x.levels_plus_b04, x.sumdecomp_expanded),
        _step("expanded sum = intersection over all index sets", x.sumdecomp_expanded, x.sumdecomp_components),
        _step("intersection over all index sets = split form", x.sumdecomp_components, x.sumdecomp_split),
    ]


def _colon_b04(x: DisplayBuilder) -> List[DisplayStep]:
    steps = [
        _step("L' + N' + M = K", x.rewritten_sum, x.K_ideal),
        _step("K : b04^d = L'/b04^d + N'/b04^d + (M : b04^d)", x.K_colon_b04, x.colon_b04_split),
        _step("split colon = displayed colon", x.colon_b04_split, x.colon_b04_display),
        _step("L'/b04^d may be replaced by L''", x.colon_b04_display, x.colon_b04_reduced),
    ]
    if x.n >= 3:
        steps.append(_step("L'' = (L1 + N1) c12 b12^{d^2}", x.L_double_prime, x.L_double_prime_factored))
    return steps


def _colon_b04_plus_c12(x: DisplayBuilder) -> List[DisplayStep]:
    return [
        _step("(K : b04^d) + (c12) = displayed sum", x.colon_b04_plus_c12, x.colon_b04_c12_sum),
        _step("displayed sum = two components", x.colon_b04_c12_sum, x.colon_b04_c12_meet),
        _step("Q2 contains the colon plus c12", lambda: x.prime('Q2'), x.colon_b04_plus_c12, Relation.CONTAINS),
        _step("Q3 contains the colon plus c12", lambda: x.prime('Q3'), x.colon_b04_plus_c12, Relation.CONTAINS),
    ]


def _colon_b04c12(x: DisplayBuilder) -> List[DisplayStep]:
    return [
        _step("K : b04^d c12 = display with W : c12", x.K_colon_b04c12, x.colon_b04c12_display),
        _step("W = two components", x.W, x.W_meet),
        _step("W : c12 = two components", x.W_colon, x.W_colon_meet),
        _step("two components = sum with product", x.W_colon_meet, x.W_colon_sum),
        _step("display = expanded display", x.colon_b04c12_display, x.colon_b04c12_expanded),
        _step("expanded display = final display", x.colon_b04c12_expanded, x.colon_b04c12_final),
    ]


def _vprime_split(x: DisplayBuilder) -> List[DisplayStep]:
    short_tail, long_tail = (lambda: x.V4_tails()[0]), (lambda: x.V4_tails()[1])
    return [
        _step("(K : b04^d c12) + (b12^{d^2}) = V' + (c11, c14, b02 - b12 b03, b01 - b12^d b04)",
              x.V_plus, x.V_display),
        _step("V' = two components", x.V_prime, x.V_prime_first),
        _step("two components = three components", x.V_prime_first, x.V_prime_three),
        _step("the second component contains the first", x.V_redundant,
              x.V_prime_outer, Relation.CONTAINS),
        _step("V' = V1 ∩ V2 ∩ V3 ∩ V4", x.V_prime, x.V_parts_meet),
        _step("V1 = intersection over index sets", lambda: x.V_part(1), x.V1_components),
        _step("V3 = intersection over index sets", lambda: x.V_part(3), x.V3_components),
        _step("V3 components = middle form", x.V3_components, x.V3_middle),
        _step("V3 middle form = final form", x.V3_middle, x.V3_final),
        _step("last V3 component contains V2", x.V3_tail, lambda: x.V_part(2), Relation.CONTAINS),
        _step("V4 = two components", lambda: x.V_part(4), x.V4_split),
        _step("V4 two components = final form", x.V4_split, x.V4_final),
        _step("third to last V4 component contains V2", short_tail, lambda: x.V_part(2), Relation.CONTAINS),
        _step("last V4 component contains V2", long_tail, lambda: x.V_part(2), Relation.CONTAINS),
    ]


def _vhat_colon(x: DisplayBuilder) -> List[DisplayStep]:
    return [
        _step("K : b04^d c12 b12^{d^2} = display with Vhat : b12^{d^2}", x.K_colon_b04c12b12, x.colon_b12_display),
        _step("Vhat = two components", x.V_hat, x.V_hat_split),
        _step("second component = intersection over index sets", x.V_hat_second, x.V_hat_second_components),
        _step("empty index set component = two components", lambda: x.V_hat_second_part(()), x.V_hat_empty_two),
        _step("two components = three components", x.V_hat_empty_two, x.V_hat_empty_three),
        _step("last component = three components", x.V_hat_empty_last, x.V_hat_empty_last_split),
        _step("Vhat : b12^{d^2} = listed components", x.V_hat_colon, x.colon_parts_meet),
        _step("intersection of the last two", lambda: meet(x.colon_part(6), x.colon_part(7)), x.last_two),
        _step("intersection of the two preceding", lambda: meet(x.colon_part(4), x.colon_part(5)),
              x.preceding_two),
        _step("intersection of the last four", lambda: meet(*[x.colon_part(k) for k in (4, 5, 6, 7)]),
              x.last_four),
        _step("intersection of the last five", lambda: meet(*[x.colon_part(k) for k in (3, 4, 5, 6, 7)]),
              lambda: x.sixteen_part(())),
        _step("intersection of the sixteen", x.sixteen_meet, x.sixteen_display),
        _step("Vhat : b12^{d^2} = final form", x.V_hat_colon, x.V_hat_colon_final),
    ]


def _colon_b04c12b12(x: DisplayBuilder) -> List[DisplayStep]:
    return [
        _step("K : b04^d c12 b12^{d^2} = long form", x.K_colon_b04c12b12, x.colon_b12_long),
        _step("long form = short form", x.colon_b12_long, x.colon_b12_short),
    ]


def _abcd_split(x: DisplayBuilder) -> List[DisplayStep]:
    return [
        _step("A = K : b04^d c12^2 b12^{d^2}", x.A_colon, x.A),
        _step("(K : b04^d c12 b12^{d^2}) + (c12) = display", x.BC_plus, x.BC_display),
        _step("display = B ∩ second component", x.BC_display, lambda: meet(x.B_part(), x.C_prime())),
        _step("second component = C ∩ D", x.C_prime, lambda: meet(x.C_part(), x.D_part())),
        _step("D = K(n-1, d^2) + C1 + (b01, .., b04)", x.D_part, x.D_recursion),
    ]


def _u_plus_b11(x: DisplayBuilder) -> List[DisplayStep]:
    return [
        _step("A + (b11^{d^2})", lambda: x._with_b11(x.A()), x.A_plus_display),
        _step("B + (b11^{d^2})", lambda: x._with_b11(x.B_part()), x.B_plus_display),
        _step("C + (b11^{d^2})", lambda: x._with_b11(x.C_part()), x.C_plus_display),
    ]


def _c_plus_b11_decomp(x: DisplayBuilder) -> List[DisplayStep]:
    return [
        _step("C + (b11^{d^2}) from the reduced ideal", lambda: x._with_b11(x.C_part()), x.C_reduced_lifted),
        _step("reduced ideal = intersection over index sets", x.C_reduced, x.C_reduced_components),
        _step("intersection over index sets = middle form", x.C_reduced_components, x.C_reduced_middle),
        _step("middle form = final form", x.C_reduced_middle, x.C_reduced_final),
    ]


def _u_colon_b11(x: DisplayBuilder) -> List[DisplayStep]:
    return [
        _step("L1 + N1 = b11^{d^2} Lhat modulo b11^d - b14^d", x.shift_mod, x.L_hat_scaled_mod),
        _step("Lhat contains D2", x.L_hat_ideal, lambda: x.D(2), Relation.CONTAINS),
        _step("A : b11^{d^2} = display", x.A_colon_b11, x.A_colon_display),
        _step("A : b11^{d^2} display = intersection over levels", x.A_colon_display, x.A_colon_levels),
        _step("B : b11^{d^2} = display", x.B_colon_b11, x.B_colon_display),
        _step("C : b11^{d^2} = display", x.C_colon_b11, x.C_colon_display),
        _step("C : b11^{d^2} display = intersection over levels", x.C_colon_display, x.C_colon_levels),
    ]


def _n2_chain(x: DisplayBuilder) -> List[DisplayStep]:
    return [
        _step("K : b04^d c12 = first display", x.K_colon_b04c12, x.n2_colon_first),
        _step("first display = second display", x.n2_colon_first, x.n2_colon_second),
        _step("(K : b04^d c12) + (b12^{d^2}) = display", x.V_plus, x.n2_plus_b12),
        _step("K : b04^d c12 b12^{d^2} = first display", x.K_colon_b04c12b12, x.n2_colon_b12_first),
        _step("first display = second display", x.n2_colon_b12_first, x.n2_colon_b12_second),
        _step("second display = two components", x.n2_colon_b12_second, lambda: x.n2_parts((1, 2))),
        _step("two components = three components", lambda: x.n2_parts((1, 2)), lambda: x.n2_parts((1, 3, 4))),
        _step("three components = four components", lambda: x.n2_parts((1, 3, 4)),
              lambda: x.n2_parts((1, 3, 5, 6))),
    ]


@dataclass(frozen=True)
class DisplayChain:
    """A registered identity check: its steps, the n it applies to, its upstream checks"""
    check_id: str
    description: str
    make_steps: Callable[[DisplayBuilder], List[DisplayStep]]
    min_n: int = 2
    max_n: Optional[int] = None
    depends_on: Tuple[str, ...] = ()

    def applies_to(self, n: int) -> bool:
        return n >= self.min_n and (self.max_n is None or n <= self.max_n)

    def steps(self, builder: DisplayBuilder) -> List[DisplayStep]:
        return self.make_steps(builder)


CHAINS: Dict[str, DisplayChain] = {chain.check_id: chain for chain in [
    DisplayChain('sumdecomp-b04', "K + (b04^d) and its decomposition over index sets", _sumdecomp),
    DisplayChain('colon-b04', "K : b04^d through the rewritten levels L', N'", _colon_b04),
    DisplayChain('colon-b04-plus-c12', "(K : b04^d) + (c12) as two components", _colon_b04_plus_c12,
                 depends_on=('colon-b04',)),
    DisplayChain('colon-b04c12', "K : b04^d c12 by the long derivation", _colon_b04c12, min_n=3,
                 depends_on=('colon-b04',)),
    DisplayChain('Vprime-split', "V' as V1 ∩ V2 ∩ V3 ∩ V4 and their decompositions", _vprime_split, min_n=3,
                 depends_on=('colon-b04c12',)),
    DisplayChain('Vhat-colon', "Vhat : b12^{d^2} through its components", _vhat_colon, min_n=3,
                 depends_on=('colon-b04c12',)),
    DisplayChain('colon-b04c12b12', "K : b04^d c12 b12^{d^2} in closed form", _colon_b04c12b12, min_n=3,
                 depends_on=('Vhat-colon',)),
    DisplayChain('ABCD-split', "A, B, C, D and the recursion to K(n-1, d^2)", _abcd_split, min_n=3,
                 depends_on=('colon-b04c12b12',)),
    DisplayChain('U-plus-b11', "U + (b11^{d^2}) for U = A, B, C", _u_plus_b11, min_n=3,
                 depends_on=('ABCD-split',)),
    DisplayChain('C-plus-b11-decomp', "Decomposition of C + (b11^{d^2})", _c_plus_b11_decomp, min_n=3,
                 depends_on=('U-plus-b11',)),
    DisplayChain('U-colon-b11', "Lhat and U : b11^{d^2} for U = A, B, C", _u_colon_b11, min_n=3,
                 depends_on=('ABCD-split',)),
    DisplayChain('n2-chain', "K(2, d) : b04^d c12 down to four components", _n2_chain, max_n=2,
                 depends_on=('colon-b04',)),
]}


def get_chain(check_id: str) -> DisplayChain:
    if check_id not in CHAINS:
        raise UnknownCheckError(f"Unknown display chain '{check_id}'")
    return CHAINS[check_id]


# Named ideals for `family emit`

_INDEXED_RE = re.compile(r'^(C|D)(\d+)$')
_B_RE = re.compile(r'^B(\d+),(\d+)$')
_PLAIN_PRIMES = ('Q2', 'Q3', 'Q5')


def list_names(params: FamilyParams) -> List[str]:
    """Every name emit_named resolves at these parameters"""
    n = params.n
    names = ['K', 'Kl', 'M', 'N', 'L', 'Lprime', 'Nprime']
    names += [f"C{r}" for r in range(1, n + 1)] + [f"D{r}" for r in range(1, n + 1)]
    names += [f"B{k},{r}" for k in range(0, n) for r in range(k, n)]
    if n >= 3:
        names += ['K1', 'M1', 'N1', 'L1', 'Ldprime', 'Vprime', 'Vhat', 'A', 'B', 'C', 'D', 'Lhat']
    names += list(_PLAIN_PRIMES) + (['Q20'] if n == 2 else [])
    return names


def emit_named(name: str, params: FamilyParams, field: Optional[Field] = None, literal: bool = False) -> Ideal:
    """Build one named ideal of the family"""
    if name == 'Kl':
        return build_Kl(params, field)
    x = display_builder(params, field, literal)
    match = _INDEXED_RE.match(name)
    if match:
        r = int(match.group(2))
        return x.C(r) if match.group(1) == 'C' else x.D(r)
    match = _B_RE.match(name)
    if match:
        return x.B(int(match.group(1)), int(match.group(2)))
    if name in list_names(params) and name.startswith('Q'):
        return x.prime(name)
    upper = {
        'K1': x.K1, 'M1': lambda: x.shifted().sublevels()[0].named('M1'),
        'N1': lambda: x.shifted().sublevels()[1].named('N1'), 'L1': lambda: x.shifted().sublevels()[2].named('L1'),
        'Ldprime': x.L_double_prime, 'Vprime': x.V_prime, 'Vhat': x.V_hat,
        'A': x.A, 'B': x.B_part, 'C': x.C_part, 'D': x.D_part, 'Lhat': x.L_hat,
    }
    plain = {
        'K': x.K, 'M': lambda: x.sublevels()[0], 'N': lambda: x.sublevels()[1], 'L': lambda: x.sublevels()[2],
        'Lprime': x.L_prime, 'Nprime': x.N_prime,
    }
    if name in plain:
        return plain[name]()
    if name in upper:
        if params.n < 3:
            raise FamilyError(f"'{name}' is defined for n >= 3")
        return upper[name]()
    raise FamilyError(f"Unknown ideal name '{name}'; see `family list`")
