"""
Candidate associated primes of K(n, d)

Each Q-family is a constructor on a FamilyBuilder. enumerate_primes walks
the families of one level (the n = 2 list, or the n >= 3 list) and, for
n >= 3, appends the candidates of the shifted family K(n-1, d^2) lifted by
C_1 + (b01, .., b04).
"""
from dataclasses import dataclass, field, replace
from itertools import combinations, product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..errors import FamilyError, FieldError
from ..ideals import Ideal, ideal_sum
from ..monitoring import monitoring
from ..poly import GREVLEX
from ..scalars import Field, Scalar, Value, verification_field
from .generators import INDICES, FamilyBuilder, FamilyParams, family_builder

logger = monitoring.get_logger(__name__)

Subset = Tuple[int, ...]

ALL_SUBSETS: List[Subset] = [s for k in range(5) for s in combinations(INDICES, k)]
NONEMPTY_SUBSETS: List[Subset] = [s for s in ALL_SUBSETS if s]

# Families by the parameters they take
LAMBDA_FAMILIES = {'Q1', 'Q4', 'Q6', 'Q8', 'Q10', 'Q11', 'Q12', 'Q13', 'Q14'}
NONEMPTY_FAMILIES = {'Q7', 'Q9', 'Q15', 'Q16'}
ROOT_FAMILIES = {'Q8', 'Q15', 'Q16', 'Q19'}
LEVEL_FAMILIES = {'Q17', 'Q18', 'Q19'}
UPPER_ONLY = {'Q4', 'Q6', 'Q7', 'Q8', 'Q9', 'Q10', 'Q11', 'Q12', 'Q13', 'Q14', 'Q15', 'Q16'}
FAMILY_IDS = [f"Q{k}" for k in range(1, 21)]


@dataclass
class PrimeCandidate:
    """A Q-ideal with the parameters it was built from"""
    family_id: str
    ideal: Ideal
    lam: Optional[Subset] = None
    alpha: Optional[Scalar] = None
    beta: Optional[Scalar] = None
    t: Optional[int] = None
    depth: int = 0
    origin: str = ""

    @property
    def label(self) -> str:
        parts = []
        if self.lam is not None:
            parts.append('L=' + (''.join(str(i) for i in self.lam) or '-'))
        if self.t is not None:
            parts.append(f"t={self.t}")
        if self.alpha is not None:
            parts.append(f"a={self.alpha.value}")
        if self.beta is not None:
            parts.append(f"b={self.beta.value}")
        body = f"{self.family_id}[{','.join(parts)}]" if parts else self.family_id
        return f"{self.origin}{body}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'label': self.label,
            'family_id': self.family_id,
            'lambda': list(self.lam) if self.lam is not None else None,
            'alpha': self.alpha.value if self.alpha is not None else None,
            'beta': self.beta.value if self.beta is not None else None,
            't': self.t,
            'depth': self.depth,
            'generators': len(self.ideal),
        }


def _check_subset(lam: Sequence[int]) -> Subset:
    subset = tuple(sorted(set(lam)))
    if any(i not in INDICES for i in subset):
        raise FamilyError(f"Index set {lam} is not a subset of {{1,2,3,4}}")
    return subset


def _as_scalar(fam: FamilyBuilder, value) -> Scalar:
    if isinstance(value, Scalar):
        if value.field != fam.ring.field:
            raise FamilyError(f"Root {value} is not in {fam.ring.field.name}")
        return value
    return Scalar(value, fam.ring.field)


def _power_is_one(x: Scalar, k: int) -> bool:
    return (x ** k).value == x.field.one


class PrimeBuilder:
    """The displayed Q-ideals at one builder level"""

    def __init__(self, fam: FamilyBuilder):
        self.fam = fam
        self._constructors: Dict[str, Callable[..., List]] = {
            fid: getattr(self, f"_q{fid[1:]}") for fid in FAMILY_IDS
        }

    # Shared pieces

    def _c_outside(self, r: int, lam: Subset) -> List:
        return [self.fam.c(r, i) for i in INDICES if i not in lam]

    def _b_equal(self, r: int, lam: Subset) -> List:
        b = self.fam.b
        return [b(r, i) - b(r, j) for i, j in combinations(lam, 2)]

    def _bs(self, *pairs: Tuple[int, int]) -> List:
        return [self.fam.b(r, i) for r, i in pairs]

    def _C1(self) -> List:
        return list(self.fam.C(1).generators)

    def _tail12(self) -> List:
        """b02 - b12 b03 and b01 - b12^d b04"""
        b, d = self.fam.b, self.fam.d
        return [b(0, 2) - b(1, 2) * b(0, 3), b(0, 1) - b(1, 2) ** d * b(0, 4)]

    # Families

    def _q1(self, lam: Subset) -> List:
        b = self.fam.b
        gens = self._bs((0, 1), (0, 4)) + self._c_outside(1, lam)
        gens += [b(0, 2) - b(1, i) * b(0, 3) for i in lam] + self._b_equal(1, lam)
        return gens

    def _q2(self) -> List:
        return self._C1() + [self.fam.g01()]

    def _q3(self) -> List:
        c = self.fam.c
        return [c(1, 1), c(1, 2), c(1, 4)] + self._bs((0, 1), (0, 2), (1, 3), (1, 4))

    def _quadric(self):
        b, c = self.fam.b, self.fam.c
        return c(1, 2) * b(1, 1) - c(1, 3) * b(1, 4)

    def _q4(self, lam: Subset) -> List:
        c, b = self.fam.c, self.fam.b
        gens = [c(1, 1), c(1, 4)] + self._bs((0, 1), (0, 2), (1, 2), (1, 3)) + [self._quadric()]
        return gens + self._c_outside(2, lam) + [1 - b(2, i) for i in lam]

    def _q5(self) -> List:
        c = self.fam.c
        return [c(1, 1), c(1, 4)] + self._bs((0, 1), (0, 2), (1, 2), (1, 3)) + [self._quadric()]

    def _q6(self, lam: Subset) -> List:
        c = self.fam.c
        gens = [c(1, 1), c(1, 3), c(1, 4)] + self._bs((0, 1), (0, 2), (1, 1), (1, 2))
        return gens + self._c_outside(2, lam) + [self.fam.b(2, i) for i in lam]

    def _q7(self, lam: Subset) -> List:
        c = self.fam.c
        gens = [c(1, 1), c(1, 3), c(1, 4)] + self._bs((0, 1), (0, 2), (1, 1), (1, 2), (1, 3))
        return gens + self._c_outside(2, lam) + self._b_equal(2, lam)

    def _q8(self, lam: Subset, alpha: Scalar) -> List:
        gens = self._C1() + self._bs((0, 1), (0, 2), (0, 3), (1, 2), (1, 3))
        return gens + self._c_outside(2, lam) + [self.fam.b(2, i) - alpha for i in lam]

    def _q9(self, lam: Subset) -> List:
        gens = self._C1() + self._bs((0, 1), (0, 2), (0, 3), (1, 2), (1, 3))
        return gens + self._c_outside(2, lam) + self._b_equal(2, lam)

    def _q10(self, lam: Subset) -> List:
        gens = self._C1() + self._bs((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3))
        return gens + self._c_outside(2, lam) + self._b_equal(2, lam)

    def _q11(self, lam: Subset) -> List:
        c, b = self.fam.c, self.fam.b
        gens = [c(1, 1), c(1, 3) - c(1, 2), c(1, 4)]
        gens += self._bs((0, 1), (0, 2), (1, 1), (1, 2), (1, 3), (1, 4))
        return gens + self._c_outside(2, lam) + [1 - b(2, i) for i in lam]

    def _q12(self, lam: Subset) -> List:
        gens = self._C1() + self._bs((0, 1), (0, 2), (1, 1), (1, 2), (1, 3), (1, 4))
        return gens + self._c_outside(2, lam) + [1 - self.fam.b(2, i) for i in lam]

    def _q13(self, lam: Subset) -> List:
        gens = self._C1() + self._bs((0, 1), (0, 2), (1, 1), (1, 2), (1, 3), (1, 4))
        return gens + self._c_outside(2, lam) + self._b_equal(2, lam)

    def _upper14(self) -> List:
        return self._C1() + self._bs((0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (1, 4))

    def _q14(self, lam: Subset) -> List:
        return self._upper14() + self._c_outside(2, lam) + self._b_equal(2, lam)

    def _q15(self, lam: Subset, alpha: Scalar) -> List:
        return self._upper14() + self._c_outside(2, lam) + [self.fam.b(2, i) - alpha for i in lam]

    # Q16 differs from Q15 only in the order of alpha
    _q16 = _q15

    def _level_prefix(self, t: int, b_from: int) -> List:
        """D_2 + .. + D_{t-1} + C_t + B_{b_from, t-1}"""
        fam = self.fam
        gens = list(fam.D_range(t - 1).generators) + list(fam.C(t).generators)
        return gens + list(fam.B(b_from, t - 1).generators)

    def _q17(self, t: int) -> List:
        b, c, d = self.fam.b, self.fam.c, self.fam.d
        gens = self._level_prefix(t, 2)
        gens += [c(1, 1) - b(1, 2) ** (d * d) * c(1, 2), c(1, 4) - c(1, 1), c(1, 3) - c(1, 2)]
        return gens + self._tail12() + [b(1, 2) - b(1, i) for i in INDICES]

    def _q18(self, t: int) -> List:
        b = self.fam.b
        gens = self._C1() + self._level_prefix(t, 2)
        return gens + self._tail12() + [b(1, 2) - b(1, i) for i in INDICES]

    def _q19(self, t: int, alpha: Scalar, beta: Scalar) -> List:
        b, d = self.fam.b, self.fam.d
        head = [b(0, 1) - b(1, 2) ** d * b(0, 4), b(0, 2), b(0, 3)]
        if self.fam.n == 2:
            # The n = 2 list carries one root: b12 = alpha b11
            return self._C1() + head + [b(1, 1) - b(1, 4), b(1, 2) - b(1, 3), b(1, 2) - b(1, 1) * alpha]
        roots = [b(1, 2) - b(1, 3) * alpha, b(1, 1) - b(1, 3) * beta, b(1, 1) - b(1, 4)]
        if t == 2:
            return self._C1() + list(self.fam.C(2).generators) + head + roots
        gens = self._C1() + self._level_prefix(t, 3) + head + roots
        return gens + [b(2, i) - alpha for i in INDICES]

    def _q20(self) -> List:
        b = self.fam.b
        return self._C1() + [b(1, 1) - b(1, 4), b(1, 2) - b(1, 3)] + list(self.fam.B0().generators)

    # Construction with validation

    def build(self, family_id: str, lam: Optional[Sequence[int]] = None, alpha=None, beta=None,
              t: Optional[int] = None) -> PrimeCandidate:
        fam = self.fam
        if family_id not in self._constructors:
            raise FamilyError(f"Unknown prime family '{family_id}'")
        if family_id in UPPER_ONLY and fam.n < 3:
            raise FamilyError(f"{family_id} is defined for n >= 3")
        if family_id == 'Q20' and fam.n != 2:
            raise FamilyError("Q20 is defined for n = 2")
        args: List = []
        subset: Optional[Subset] = None
        takes_lambda = family_id in LAMBDA_FAMILIES or family_id in NONEMPTY_FAMILIES
        if takes_lambda:
            if lam is None:
                raise FamilyError(f"{family_id} needs an index set")
            subset = _check_subset(lam)
            if family_id in NONEMPTY_FAMILIES and not subset:
                raise FamilyError(f"{family_id} needs a non-empty index set")
            args.append(subset)
        elif lam is not None:
            raise FamilyError(f"{family_id} takes no index set")

        if family_id in LEVEL_FAMILIES:
            if t is None or not 2 <= t <= fam.n:
                raise FamilyError(f"{family_id} needs a level t in 2..{fam.n}, got {t}")
            args.append(t)
        elif t is not None:
            raise FamilyError(f"{family_id} takes no level")

        a = b = None
        if family_id in ROOT_FAMILIES:
            if alpha is None:
                raise FamilyError(f"{family_id} needs a root of unity alpha")
            a = _as_scalar(fam, alpha)
            d = fam.d
            if family_id == 'Q15':
                if not _power_is_one(a, d * d) or _power_is_one(a, d):
                    raise FamilyError(f"Q15 needs alpha^{d * d} = 1 and alpha^{d} != 1, got {a}")
            elif not _power_is_one(a, d):
                raise FamilyError(f"{family_id} needs alpha^{d} = 1, got {a}")
            args.append(a)
            if family_id == 'Q19':
                if fam.n == 2:
                    if beta is not None and _as_scalar(fam, beta).value != fam.ring.field.one:
                        raise FamilyError("Q19 at n = 2 takes beta = 1 only")
                    b = None
                    args.append(None)
                else:
                    if beta is None:
                        raise FamilyError("Q19 needs a root of unity beta")
                    b = _as_scalar(fam, beta)
                    if not _power_is_one(b, d):
                        raise FamilyError(f"Q19 needs beta^{d} = 1, got {b}")
                    args.append(b)
        elif alpha is not None or beta is not None:
            raise FamilyError(f"{family_id} takes no roots of unity")

        gens = self._constructors[family_id](*args)
        ideal = fam.ideal(gens, family_id)
        return PrimeCandidate(family_id, ideal, subset, a, b, t)

    # Enumeration of one level

    def _roots(self, order: int, exclude: Optional[int] = None) -> List[Scalar]:
        field = self.fam.ring.field
        roots = [Scalar(v, field) for v in field.roots_of_unity(order)]
        if exclude is not None:
            roots = [z for z in roots if not _power_is_one(z, exclude)]
        return roots

    def level_candidates(self, notices: List[str]) -> List[PrimeCandidate]:
        """The list of this level without the recursion, in a fixed order"""
        fam = self.fam
        d = fam.d
        out: List[PrimeCandidate] = []
        out += [self.build('Q1', lam) for lam in NONEMPTY_SUBSETS]
        out += [self.build(j) for j in ('Q2', 'Q3', 'Q5')]
        if fam.n == 2:
            out += [self.build('Q17', t=2), self.build('Q18', t=2)]
            out += self._with_roots(notices, 'Q19', lambda: [
                self.build('Q19', t=2, alpha=a) for a in self._roots(d)])
            out.append(self.build('Q20'))
            return out
        for fid in ('Q4', 'Q6', 'Q10', 'Q11', 'Q12', 'Q13', 'Q14'):
            out += [self.build(fid, lam) for lam in ALL_SUBSETS]
        for fid in ('Q7', 'Q9'):
            out += [self.build(fid, lam) for lam in NONEMPTY_SUBSETS]
        out += self._with_roots(notices, 'Q8', lambda: [
            self.build('Q8', lam, a) for lam in ALL_SUBSETS for a in self._roots(d)])
        out += self._with_roots(notices, 'Q15', lambda: [
            self.build('Q15', lam, a) for lam in NONEMPTY_SUBSETS for a in self._roots(d * d, exclude=d)])
        out += self._with_roots(notices, 'Q16', lambda: [
            self.build('Q16', lam, a) for lam in NONEMPTY_SUBSETS for a in self._roots(d)])
        for t in range(2, fam.n + 1):
            out += [self.build('Q17', t=t), self.build('Q18', t=t)]
        out += self._with_roots(notices, 'Q19', lambda: [
            self.build('Q19', t=t, alpha=a, beta=b)
            for t in range(2, fam.n + 1) for a, b in product(self._roots(d), repeat=2)])
        return out

    def _with_roots(self, notices: List[str], family_id: str, make: Callable[[], List]) -> List:
        try:
            return make()
        except FieldError as e:
            notice = (f"{family_id} skipped at K({self.fam.n},{self.fam.d}): "
                      f"{self.fam.ring.field.name} lacks the roots of unity ({e})")
            logger.warning(notice)
            notices.append(notice)
            return []


def lift_candidate(parent: FamilyBuilder, candidate: PrimeCandidate) -> PrimeCandidate:
    """A candidate of the shifted family plus C_1 + (b01, .., b04) of the parent"""
    ideal = ideal_sum(candidate.ideal, parent.C(1), parent.B0()).named(candidate.family_id)
    origin = f"K({parent.n - 1},{parent.d ** 2})/" + candidate.origin
    return replace(candidate, ideal=ideal, depth=candidate.depth + 1, origin=origin)


def _dedup(candidates: List[PrimeCandidate]) -> List[PrimeCandidate]:
    seen: Dict[tuple, str] = {}
    kept: List[PrimeCandidate] = []
    for cand in candidates:
        key = cand.ideal.groebner_basis(GREVLEX).key()
        if key in seen:
            logger.debug("Duplicate candidate", context={'label': cand.label, 'same_as': seen[key]})
            continue
        seen[key] = cand.label
        kept.append(cand)
    return kept


@dataclass
class PrimeEnumeration:
    """Candidates of K(n, d) with their recursion and the skipped families"""
    params: FamilyParams
    candidates: List[PrimeCandidate]
    raw_count: int
    notices: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.candidates)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'params': self.params.to_dict(),
            'count': len(self.candidates),
            'raw_count': self.raw_count,
            'notices': list(self.notices),
            'candidates': [c.to_dict() for c in self.candidates],
        }


def _enumerate(fam: FamilyBuilder, dedup: bool, notices: List[str]) -> Tuple[List[PrimeCandidate], int]:
    level = PrimeBuilder(fam).level_candidates(notices)
    raw = len(level)
    if dedup:
        level = _dedup(level)
    if fam.n == 2:
        return level, raw
    lower, lower_raw = _enumerate(fam.shifted(), dedup, notices)
    return level + [lift_candidate(fam, c) for c in lower], raw + lower_raw


def enumerate_builder(fam: FamilyBuilder, dedup: bool = True) -> PrimeEnumeration:
    notices: List[str] = []
    candidates, raw = _enumerate(fam, dedup, notices)
    logger.info("Enumerated prime candidates", context={
        'n': fam.n, 'd': fam.d, 'raw': raw, 'kept': len(candidates), 'skipped_families': len(notices)})
    return PrimeEnumeration(fam.params, candidates, raw, notices)


def enumerate_primes(params: FamilyParams, field: Optional[Field] = None,
                     dedup: bool = True) -> PrimeEnumeration:
    """
    Candidate associated primes of K(n, d): the level list plus, for n >= 3,
    the recursively enumerated list of K(n-1, d^2) lifted by C_1 + (b01..b04).
    Duplicates (equal reduced Gröbner bases) are removed within each level.
    """
    field = field or verification_field(params.n, params.d)
    return enumerate_builder(family_builder(params, field), dedup)


def build_prime(family_id: str, params: FamilyParams, field: Optional[Field] = None,
                lam: Optional[Sequence[int]] = None, alpha: Optional[Value] = None,
                beta: Optional[Value] = None, t: Optional[int] = None) -> PrimeCandidate:
    """One displayed Q-ideal of K(n, d)"""
    field = field or verification_field(params.n, params.d)
    return PrimeBuilder(family_builder(params, field)).build(family_id, lam, alpha, beta, t)


def count_primes_formula(params: FamilyParams) -> int:
    """
    160n - 301 + 16d + n(n-1) + sum_{k=1}^{n-3} (31 + n - k) d^{2^k} + 18 d^{2^{n-2}}
    for n >= 3; the size of the n = 2 list, 21 + d, for n = 2.
    """
    n, d = params.n, params.d
    if n == 2:
        return 21 + d
    total = 160 * n - 301 + 16 * d + n * (n - 1)
    total += sum((31 + n - k) * d ** (2 ** k) for k in range(1, n - 2))
    return total + 18 * d ** (2 ** (n - 2))


def count_primes_listed(params: FamilyParams) -> int:
    """
    Size of the enumeration over a field with all needed roots, before
    duplicate removal, by counting the displayed families
    """
    n, d = params.n, params.d
    if n == 2:
        return 21 + d
    level = 158 + 2 * n + 16 * d + (n + 14) * d * d
    return level + count_primes_listed(FamilyParams(n - 1, d * d))
