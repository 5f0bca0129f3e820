"""
Generator lists of the K_l(n, d) / K(n, d) family and its auxiliary ideals

A FamilyBuilder owns a ring and an index offset. The offset-0 builder
constructs K(n, d) itself; the same builder with offset 1, n - 1 levels and
exponent d^2 constructs the shifted family K(n-1, d^2) on the variables
b_{ri}, c_{r'i} with r >= 1, r' >= 2. Variable b(r, i) names b{r+offset}{i}.
"""
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from ..config import config
from ..errors import FamilyError
from ..ideals import Ideal, ideal_sum
from ..monitoring import monitoring
from ..poly import Polynomial, Ring
from ..scalars import Field, rationals

logger = monitoring.get_logger(__name__)

INDICES = (1, 2, 3, 4)


@dataclass(frozen=True)
class FamilyParams:
    """Level count n and exponent d of K(n, d)"""
    n: int
    d: int

    def __post_init__(self):
        if self.n < 2 or self.d < 2:
            raise FamilyError(f"Family parameters need n, d >= 2, got n={self.n}, d={self.d}")

    def to_dict(self) -> Dict[str, int]:
        return {'n': self.n, 'd': self.d}


class FamilyBuilder:
    """
    Constructors for the family ideals at one (n, d, offset).

    literal switches the readings of displays with printing errors to the
    text as printed; where that text is not a polynomial ideal in this ring
    the constructor raises FamilyError.
    """

    def __init__(self, ring: Ring, n: int, d: int, offset: int = 0, literal: bool = False):
        if n < 2 or d < 2:
            raise FamilyError(f"Family parameters need n, d >= 2, got n={n}, d={d}")
        self.ring = ring
        self.n = n
        self.d = d
        self.offset = offset
        self.literal = literal
        top = n - 1 + offset
        if not ring.has_var(f"b{top}4") or not ring.has_var(f"c{top}4"):
            raise FamilyError(f"Ring {ring.name} has no variables for K({n}, {d}) at offset {offset}")

    @property
    def params(self) -> FamilyParams:
        return FamilyParams(self.n, self.d)

    # Variables

    def b(self, r: int, i: int) -> Polynomial:
        return self.ring.var(f"b{r + self.offset}{i}")

    def c(self, r: int, i: int) -> Polynomial:
        return self.ring.var(f"c{r + self.offset}{i}")

    def s(self, r: int) -> Polynomial:
        return self.ring.var(f"s{r}")

    def f(self, r: int) -> Polynomial:
        return self.ring.var(f"f{r}")

    def one(self) -> Polynomial:
        return self.ring.one()

    def chain(self, last: int, first: int = 1) -> Polynomial:
        """c_{first,1} * ... * c_{last,1}; 1 when last < first"""
        result = self.one()
        for r in range(first, last + 1):
            result = result * self.c(r, 1)
        return result

    def ideal(self, gens, name: Optional[str] = None) -> Ideal:
        return Ideal(self.ring, list(gens), name)

    def shifted(self) -> 'FamilyBuilder':
        """K(n-1, d^2) on the variables one level up"""
        if self.n < 3:
            raise FamilyError("The shifted family needs n >= 3")
        return FamilyBuilder(self.ring, self.n - 1, self.d ** 2, self.offset + 1, self.literal)

    # Generators of K(n, d)

    def g01(self) -> Polynomial:
        b, d = self.b, self.d
        return b(0, 1) * b(0, 3) ** d - b(0, 4) * b(0, 2) ** d

    def level0(self) -> List[Polynomial]:
        return [self.g01()]

    def level1(self) -> List[Polynomial]:
        b, c, d = self.b, self.c, self.d
        gens = [c(1, i) * (b(0, 2) - b(1, i) * b(0, 3)) for i in INDICES]
        gens += [c(1, i) * (b(0, 1) - b(1, i) ** d * b(0, 4)) for i in INDICES]
        gens += [c(1, i) * c(1, j) * (b(1, i) - b(1, j)) for i, j in combinations(INDICES, 2)]
        return gens

    def level2_head(self) -> List[Polynomial]:
        b, c, d = self.b, self.c, self.d
        b01d, b04d = b(0, 1) ** d, b(0, 4) ** d
        return [
            b04d * c(1, 1) - b01d * c(1, 2),
            b04d * c(1, 4) - b01d * c(1, 3),
            b01d * (c(1, 2) - c(1, 3)),
            b04d * (c(1, 2) * b(1, 1) - c(1, 3) * b(1, 4)),
        ]

    def level2_tail(self) -> List[Polynomial]:
        """g_{2,4+i} for n >= 3, the single g_25 when n = 2"""
        b, c, d = self.b, self.c, self.d
        b04d = b(0, 4) ** d
        if self.n >= 3:
            return [b04d * c(1, 2) * c(2, i) * (b(1, 2) - b(2, i) * b(1, 3)) for i in INDICES]
        if self.literal or not config.g25_drop_c2i:
            raise FamilyError("g_25 as printed carries c_{2i}, which does not exist when n = 2")
        return [b04d * c(1, 2) * (b(1, 2) - b(1, 3))]

    def level2(self) -> List[Polynomial]:
        return self.level2_head() + self.level2_tail()

    def level_r(self, r: int) -> List[Polynomial]:
        """Generators g_{r1}..g_{r4} and g_{r,4+i} (or g_{n5} at r = n), 3 <= r <= n"""
        if not 3 <= r <= self.n:
            raise FamilyError(f"Level {r} is outside 3..{self.n}")
        b, c = self.b, self.c
        b01d = b(0, 1) ** self.d
        head = b01d * self.chain(r - 3)
        gens = [
            head * (c(r - 2, 4) * c(r - 1, 1) - c(r - 2, 1) * c(r - 1, 2)),
            head * (c(r - 2, 4) * c(r - 1, 4) - c(r - 2, 1) * c(r - 1, 3)),
            b01d * self.chain(r - 2) * (c(r - 1, 3) - c(r - 1, 2)),
            head * c(r - 2, 4) * (c(r - 1, 2) * b(r - 1, 1) - c(r - 1, 3) * b(r - 1, 4)),
        ]
        tail = head * c(r - 2, 4) * c(r - 1, 2)
        if r < self.n:
            gens += [tail * c(r, i) * (b(r - 1, 2) - b(r, i) * b(r - 1, 3)) for i in INDICES]
        else:
            gens.append(tail * (b(r - 1, 2) - b(r - 1, 3)))
        return gens

    def upper_levels(self) -> List[Polynomial]:
        return [g for r in range(3, self.n + 1) for g in self.level_r(r)]

    def K(self) -> Ideal:
        gens = self.level0() + self.level1() + self.level2() + self.upper_levels()
        return self.ideal(gens, f"K({self.n},{self.d})")

    def sublevels(self) -> Tuple[Ideal, Ideal, Ideal]:
        """M (levels 0 and 1), N (level 2), L (levels 3..n)"""
        return (self.ideal(self.level0() + self.level1(), 'M'),
                self.ideal(self.level2(), 'N'),
                self.ideal(self.upper_levels(), 'L'))

    def target(self) -> Polynomial:
        """b01^d c11 ... c_{n-2,1} (c_{n-1,1} - c_{n-1,4}), the image of s_n - f_n"""
        n = self.n
        return self.b(0, 1) ** self.d * self.chain(n - 2) * (self.c(n - 1, 1) - self.c(n - 1, 4))

    # The long family K_l(n, d)

    def _require_long(self):
        if self.offset or not self.ring.has_var(f"s{self.n}"):
            raise FamilyError("K_l needs the long ring at offset 0")

    def K_long(self) -> Ideal:
        self._require_long()
        b, c, s, f, n = self.b, self.c, self.s, self.f, self.n
        b01d = b(0, 1) ** self.d
        gens = self.level0() + self.level1() + self.level2()
        if n == 2:
            gens += [s(2) - c(1, 1) * b01d, f(2) - c(1, 4) * b01d]
            return self.ideal(gens, f"Kl(2,{self.d})")
        gens += [s(2) - c(1, 1), f(2) - c(1, 4)]
        for r in range(3, n):
            gens += [s(r) - s(r - 1) * c(r - 1, 1), f(r) - s(r - 1) * c(r - 1, 4)]
        for r in range(3, n + 1):
            sp, fp = s(r - 1), f(r - 1)
            gens += [
                b01d * (fp * c(r - 1, 1) - sp * c(r - 1, 2)),
                b01d * (fp * c(r - 1, 4) - sp * c(r - 1, 3)),
                b01d * sp * (c(r - 1, 3) - c(r - 1, 2)),
                b01d * fp * (c(r - 1, 2) * b(r - 1, 1) - c(r - 1, 3) * b(r - 1, 4)),
            ]
            if r < n:
                gens += [b01d * fp * c(r - 1, 2) * c(r, i) * (b(r - 1, 2) - b(r, i) * b(r - 1, 3))
                         for i in INDICES]
        gens += [s(n) - s(n - 1) * c(n - 1, 1) * b01d,
                 f(n) - s(n - 1) * c(n - 1, 4) * b01d,
                 b01d * f(n - 1) * c(n - 1, 2) * (b(n - 1, 2) - b(n - 1, 3))]
        return self.ideal(gens, f"Kl({n},{self.d})")

    def long_target(self) -> Polynomial:
        self._require_long()
        return self.s(self.n) - self.f(self.n)

    def eval_images(self, target: Ring) -> Dict[str, Polynomial]:
        """Images of s_r, f_r in the short ring"""
        self._require_long()
        n = self.n
        short = FamilyBuilder(target, n, self.d, 0, self.literal)
        images: Dict[str, Polynomial] = {}
        for r in range(2, n):
            images[f"s{r}"] = short.chain(r - 1)
            images[f"f{r}"] = short.chain(r - 2) * short.c(r - 1, 4)
        b01d = short.b(0, 1) ** self.d
        images[f"s{n}"] = short.chain(n - 1) * b01d
        images[f"f{n}"] = short.chain(n - 2) * short.c(n - 1, 4) * b01d
        return images

    # Auxiliary ideals

    def C(self, r: int) -> Ideal:
        """(c_{r1}, .., c_{r4}); the zero ideal at r = n"""
        if not 1 <= r <= self.n:
            raise FamilyError(f"C_{r} is defined for 1 <= r <= {self.n}")
        if r == self.n:
            return self.ideal([], f"C{r}")
        return self.ideal([self.c(r, i) for i in INDICES], f"C{r}")

    def D(self, r: int) -> Ideal:
        """(c_{r4} - c_{r1}, c_{r3} - c_{r2}, c_{r2} - c_{r1}); the zero ideal at r = n"""
        if not 1 <= r <= self.n:
            raise FamilyError(f"D_{r} is defined for 1 <= r <= {self.n}")
        if r == self.n:
            return self.ideal([], f"D{r}")
        c = self.c
        return self.ideal([c(r, 4) - c(r, 1), c(r, 3) - c(r, 2), c(r, 2) - c(r, 1)], f"D{r}")

    def B(self, k: int, r: int) -> Ideal:
        """(1 - b_{ji} | j = k..r); the zero ideal when r < k"""
        if k < 0 or r > self.n - 1:
            raise FamilyError(f"B_{k},{r} needs 0 <= k and r <= {self.n - 1}")
        return self.ideal([1 - self.b(j, i) for j in range(k, r + 1) for i in INDICES], f"B{k},{r}")

    def D_range(self, last: int, first: int = 2) -> Ideal:
        """D_first + ... + D_last"""
        return ideal_sum(self.ideal([]), *[self.D(r) for r in range(first, last + 1)])

    def B0(self) -> Ideal:
        """(b_01, .., b_04)"""
        return self.ideal([self.b(0, i) for i in INDICES], 'B0')


    # Rewritten ideals used by the colon computations

    def _b_index(self, r: int, i: int) -> int:
        return self.ring.index[f"b{r + self.offset}{i}"]

    def _rewrite_b01(self, g: Polynomial) -> Polynomial:
        """
        Terms c_{1i} b01^d m become c_{1i} b_{1i}^{d^2} b04^d m, using the
        first c_{1i} present; terms without b01^d are kept.
        """
        ring, d = self.ring, self.d
        b01, b04 = self._b_index(0, 1), self._b_index(0, 4)
        c1 = [ring.index[f"c{1 + self.offset}{i}"] for i in INDICES]
        result = ring.zero()
        for m, coeff in g.terms.items():
            hit = next((k for k, idx in enumerate(c1) if m[idx]), None)
            if m[b01] < d:
                result = result + Polynomial.from_raw(ring, {m: coeff})
                continue
            if hit is None:
                raise FamilyError(f"Term of {g} carries b01^d without a c_1i factor")
            exps = list(m)
            exps[b01] -= d
            exps[b04] += d
            exps[self._b_index(1, hit + 1)] += d * d
            result = result + Polynomial.from_raw(ring, {tuple(exps): coeff})
        return result

    def _divide_b04(self, g: Polynomial) -> Polynomial:
        exps = [0] * self.ring.ngens
        exps[self._b_index(0, 4)] = self.d
        return g.divide_monomial(tuple(exps))

    def L_prime(self) -> Ideal:
        """L with each c_{1i} b01^d rewritten as c_{1i} b_{1i}^{d^2} b04^d"""
        return self.ideal([self._rewrite_b01(g) for g in self.upper_levels()], "L'")

    def N_prime(self) -> Ideal:
        return self.ideal([self._rewrite_b01(g) for g in self.level2()], "N'")

    def L_prime_over_b04(self) -> Ideal:
        return self.ideal([self._divide_b04(g) for g in self.L_prime().generators], "L'/b04^d")

    def N_prime_over_b04(self) -> Ideal:
        return self.ideal([self._divide_b04(g) for g in self.N_prime().generators], "N'/b04^d")

    def L_double_prime(self) -> Ideal:
        """L'/b04^d with c11 and c14 rewritten as b12^{d^2} c12"""
        image = self.b(1, 2) ** (self.d ** 2) * self.c(1, 2)
        images = {f"c{1 + self.offset}1": image, f"c{1 + self.offset}4": image}
        return self.L_prime_over_b04().substitute(images).named("L''")

    def L_hat(self) -> Ideal:
        """
        The ideal with (L1 + N1) = b11^{d^2} L_hat modulo b11^d - b14^d:
        the shifted levels >= 3 divided by b11^{d^2}, plus D_2,
        c22(b21 - b24) and the shifted tail c22 c3i(b22 - b3i b23)
        (c22(b22 - b23) when n = 3).
        """
        if self.n < 3:
            raise FamilyError("L_hat needs n >= 3")
        b, c = self.b, self.c
        shifted = self.shifted()
        exps = [0] * self.ring.ngens
        exps[self._b_index(1, 1)] = shifted.d
        gens = [g.divide_monomial(tuple(exps)) for g in shifted.upper_levels()]
        gens += self.D(2).generators
        gens.append(c(2, 2) * (b(2, 1) - b(2, 4)))
        if self.n >= 4:
            gens += [c(2, 2) * c(3, i) * (b(2, 2) - b(3, i) * b(2, 3)) for i in INDICES]
        else:
            gens.append(c(2, 2) * (b(2, 2) - b(2, 3)))
        return self.ideal(gens, 'Lhat')


def family_ring(n: int, field: Optional[Field] = None, long: bool = False) -> Ring:
    field = field or rationals()
    return Ring.long(n, field) if long else Ring.short(n, field)


def family_builder(params: FamilyParams, field: Optional[Field] = None, long: bool = False,
                   literal: bool = False) -> FamilyBuilder:
    return FamilyBuilder(family_ring(params.n, field, long), params.n, params.d, 0, literal)


def build_Kl(params: FamilyParams, field: Optional[Field] = None) -> Ideal:
    """K_l(n, d) in the long ring: 10n + 2 generators of degree at most d + 5"""
    return family_builder(params, field, long=True).K_long()


def build_K(params: FamilyParams, field: Optional[Field] = None) -> Ideal:
    """K(n, d) in the short ring"""
    return family_builder(params, field).K()


def eval_map(x, params: FamilyParams):
    """
    Image of a long-ring polynomial or ideal under the evaluation map; the
    result lives in the short ring of the same n and field.
    """
    ring = x.ring
    long_builder = FamilyBuilder(ring, params.n, params.d)
    target = Ring.short(params.n, ring.field)
    return x.substitute(long_builder.eval_images(target), target)


def build_sublevels(params: FamilyParams, field: Optional[Field] = None) -> Tuple[Ideal, Ideal, Ideal]:
    return family_builder(params, field).sublevels()


def build_shifted(params: FamilyParams, field: Optional[Field] = None) -> Tuple[Ideal, Ideal, Ideal, Ideal]:
    """(K1, M1, N1, L1): K(n-1, d^2) and its level ideals on the shifted variables"""
    shifted = family_builder(params, field).shifted()
    M1, N1, L1 = shifted.sublevels()
    K1 = shifted.K()
    logger.debug("Built shifted family", context={'n': shifted.n, 'd': shifted.d, 'generators': len(K1)})
    return K1, M1.named('M1'), N1.named('N1'), L1.named('L1')


def build_aux(params: FamilyParams, field: Optional[Field] = None) -> Dict[str, Ideal]:
    """C_r, D_r for r = 1..n and B_{k,r} for 0 <= k <= r <= n - 1"""
    fam = family_builder(params, field)
    aux: Dict[str, Ideal] = {}
    for r in range(1, params.n + 1):
        aux[f"C{r}"] = fam.C(r)
        aux[f"D{r}"] = fam.D(r)
    for k in range(0, params.n):
        for r in range(k, params.n):
            aux[f"B{k},{r}"] = fam.B(k, r)
    return aux
