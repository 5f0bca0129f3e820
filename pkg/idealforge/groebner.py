"""
Division with remainder, Buchberger's algorithm and membership certificates

The engine works on raw term lists sorted descending under the active order.
Pair handling follows the Gebauer-Moller update with the normal selection
strategy; the input is interreduced first.
"""
import heapq
import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .config import config
from .errors import BudgetExceeded, RingMismatchError
from .monitoring import monitoring, monitor_execution
from .poly import Monomial, MonomialOrder, Polynomial, Ring, format_poly, monomial_lcm
from .scalars import Value

logger = monitoring.get_logger(__name__)

Terms = List[Tuple[Monomial, Value]]
Transform = Dict[int, Dict[Monomial, Value]]

_budget = threading.local()
_clock = time.monotonic
_NO_CAP = object()


@contextmanager
def budget(seconds: Optional[float]):
    """
    Time cap for each Gröbner computation started in this thread.

    Every run gets its own deadline of `seconds` from its start; None lifts
    the cap. Nested budgets keep the smaller cap. Without any budget the cap
    is IDEALFORGE_BUDGET_SECONDS.
    """
    previous = getattr(_budget, 'cap', _NO_CAP)
    cap = seconds
    if previous is not _NO_CAP and previous is not None and (cap is None or previous < cap):
        cap = previous
    _budget.cap = cap
    try:
        yield
    finally:
        if previous is _NO_CAP:
            del _budget.cap
        else:
            _budget.cap = previous


def run_cap() -> Optional[float]:
    """Cap in seconds that the next Gröbner computation in this thread gets"""
    cap = getattr(_budget, 'cap', _NO_CAP)
    return config.budget_seconds if cap is _NO_CAP else cap


@contextmanager
def _run_deadline():
    cap = run_cap()
    previous = getattr(_budget, 'deadline', None)
    _budget.deadline = None if cap is None else _clock() + cap
    try:
        yield
    finally:
        _budget.deadline = previous


def check_budget():
    deadline = getattr(_budget, 'deadline', None)
    if deadline is not None and _clock() > deadline:
        raise BudgetExceeded("Gröbner computation exceeded its time budget")


@dataclass
class Certificate:
    """target = sum(coefficients[i] * generators[i]), exactly"""
    target: Polynomial
    generators: Tuple[Polynomial, ...]
    coefficients: List[Polynomial]
    max_coeff_degree: int = -1

    def __post_init__(self):
        self.max_coeff_degree = max((c.total_degree() for c in self.coefficients), default=-1)

    def combination(self, generators: Optional[Sequence[Polynomial]] = None) -> Polynomial:
        gens = list(generators if generators is not None else self.generators)
        if len(gens) != len(self.coefficients):
            raise ValueError(f"Certificate has {len(self.coefficients)} coefficients for {len(gens)} generators")
        total = self.target.ring.zero()
        for c, g in zip(self.coefficients, gens):
            if c:
                total = total + c * g
        return total

    def verify(self, generators: Optional[Sequence[Polynomial]] = None) -> bool:
        """Re-expand the combination and compare with the target"""
        return self.combination(generators) == self.target

    def to_dict(self) -> Dict[str, Any]:
        return {
            'target': format_poly(self.target),
            'max_coeff_degree': self.max_coeff_degree,
            'coefficient_degrees': [c.total_degree() for c in self.coefficients],
        }


class ReducedGB:
    """Reduced Gröbner basis of an ideal under one monomial order"""

    def __init__(self, ring: Ring, order: MonomialOrder, basis: List[Polynomial],
                 generators: Tuple[Polynomial, ...] = (),
                 transform: Optional[List[List[Polynomial]]] = None):
        self.ring = ring
        self.order = order
        self.basis = basis
        self.generators = generators
        self.transform = transform
        self._terms = [_sorted_terms(g, order) for g in basis]

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __repr__(self) -> str:
        return f"ReducedGB({len(self.basis)} elements, {self.order})"

    def leading_monomials(self) -> List[Monomial]:
        return [t[0][0] for t in self._terms]

    def is_unit(self) -> bool:
        """True when the ideal is the whole ring"""
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def is_zero(self) -> bool:
        return not self.basis

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form of f"""
        if f.ring != self.ring:
            raise RingMismatchError(f"Cannot reduce a polynomial of {f.ring} by a basis of {self.ring}")
        engine = _Engine(self.ring, self.order)
        remainder = engine.reduce_terms(dict(f.terms), self._terms)
        return Polynomial(self.ring, dict(remainder), _normalized=True)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def key(self) -> tuple:
        """Hashable canonical form"""
        return (str(self.order), tuple(tuple(t) for t in self._terms))

    def quotients(self, f: Polynomial) -> Tuple[Polynomial, List[Polynomial]]:
        engine = _Engine(self.ring, self.order)
        quotients: List[Dict[Monomial, Value]] = [{} for _ in self._terms]
        remainder = engine.reduce_terms(dict(f.terms), self._terms, quotients)
        return (Polynomial(self.ring, dict(remainder), _normalized=True),
                [Polynomial(self.ring, q, _normalized=True) for q in quotients])


def _sorted_terms(f: Polynomial, order: MonomialOrder) -> Terms:
    if order == f.ring.order:
        return list(f.terms.items())
    key = order.key
    return sorted(f.terms.items(), key=lambda t: key(t[0]), reverse=True)


class _Element:
    __slots__ = ('terms', 'lm', 'transform')

    def __init__(self, terms: Terms, transform: Optional[Transform]):
        self.terms = terms
        self.lm = terms[0][0]
        self.transform = transform


class _Engine:
    """Raw-term arithmetic for one ring and order"""

    def __init__(self, ring: Ring, order: MonomialOrder):
        self.ring = ring
        self.field = ring.field
        self.order = order
        self.key = order.key
        self.reduced_pairs = 0
        self.zero_reductions = 0
        self.pruned_pairs = 0

    def neg_key(self, m: Monomial) -> tuple:
        return tuple(-x for x in self.key(m))

    def reduce_terms(self, terms: Dict[Monomial, Value], divisors: Sequence[Terms],
                     quotients: Optional[List[Dict[Monomial, Value]]] = None) -> Terms:
        """
        Full reduction of terms by divisors; the first divisor whose leading
        monomial divides a term wins. Quotients accumulate in place.
        """
        field = self.field
        p = dict(terms)
        heap = [(self.neg_key(m), m) for m in p]
        heapq.heapify(heap)
        remainder: Terms = []
        steps = 0
        while heap:
            _, m = heapq.heappop(heap)
            c = p.pop(m, None)
            if c is None:
                continue
            steps += 1
            if steps & 255 == 0:
                check_budget()
            for i, g in enumerate(divisors):
                lm, lc = g[0]
                if all(a <= b for a, b in zip(lm, m)):
                    break
            else:
                remainder.append((m, c))
                continue
            q = c if lc == 1 else field.div(c, lc)
            shift = tuple(b - a for a, b in zip(lm, m))
            for gm, gc in g[1:]:
                nm = tuple(a + b for a, b in zip(gm, shift))
                old = p.get(nm)
                if old is None:
                    p[nm] = field.neg(field.mul(q, gc))
                    heapq.heappush(heap, (self.neg_key(nm), nm))
                    continue
                value = field.sub(old, field.mul(q, gc))
                if value == 0:
                    del p[nm]
                else:
                    p[nm] = value
            if quotients is not None:
                acc = quotients[i]
                value = field.add(acc.get(shift, field.zero), q)
                if value == 0:
                    acc.pop(shift, None)
                else:
                    acc[shift] = value
        return remainder

    # Transform bookkeeping

    def _add_product(self, acc: Dict[Monomial, Value], a: Dict[Monomial, Value],
                     b: Dict[Monomial, Value], coeff: Value):
        """acc += coeff * a * b"""
        field = self.field
        for m1, c1 in a.items():
            c1 = field.mul(c1, coeff)
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                value = field.add(acc.get(m, field.zero), field.mul(c1, c2))
                if value == 0:
                    acc.pop(m, None)
                else:
                    acc[m] = value

    def _combine(self, transforms: Iterable[Tuple[Dict[Monomial, Value], Transform, Value]]) -> Transform:
        """Sum of coeff * multiplier * transform over the given triples"""
        result: Transform = {}
        for multiplier, transform, coeff in transforms:
            for j, poly in transform.items():
                acc = result.setdefault(j, {})
                self._add_product(acc, multiplier, poly, coeff)
                if not acc:
                    del result[j]
        return result

    def _scale(self, terms: Terms, transform: Optional[Transform]) -> _Element:
        field = self.field
        lc = terms[0][1]
        if lc == 1:
            return _Element(terms, transform)
        inv = field.inv(lc)
        terms = [(m, field.mul(c, inv)) for m, c in terms]
        if transform is not None:
            transform = {j: {m: field.mul(c, inv) for m, c in poly.items()} for j, poly in transform.items()}
        return _Element(terms, transform)

    def normal(self, terms: Dict[Monomial, Value], transform: Optional[Transform],
               divisors: Sequence[_Element]) -> Optional[_Element]:
        """Monic normal form, carrying the transform through the division"""
        quotients = [{} for _ in divisors] if transform is not None else None
        remainder = self.reduce_terms(terms, [e.terms for e in divisors], quotients)
        if not remainder:
            return None
        if transform is not None:
            one = self.field.one
            zero_mono = self.ring.zero_monomial()
            triples = [({zero_mono: one}, transform, one)]
            triples += [(q, e.transform, self.field.neg(one)) for q, e in zip(quotients, divisors) if q]
            transform = self._combine(triples)
        return self._scale(remainder, transform)

    def spoly(self, f: _Element, g: _Element, tracking: bool) -> Tuple[Dict[Monomial, Value], Optional[Transform]]:
        field = self.field
        lcm = monomial_lcm(f.lm, g.lm)
        s1 = tuple(a - b for a, b in zip(lcm, f.lm))
        s2 = tuple(a - b for a, b in zip(lcm, g.lm))
        terms: Dict[Monomial, Value] = {}
        for m, c in f.terms[1:]:
            terms[tuple(a + b for a, b in zip(m, s1))] = c
        for m, c in g.terms[1:]:
            nm = tuple(a + b for a, b in zip(m, s2))
            value = field.sub(terms.get(nm, field.zero), c)
            if value == 0:
                terms.pop(nm, None)
            else:
                terms[nm] = value
        transform = None
        if tracking:
            one = field.one
            transform = self._combine([({s1: one}, f.transform, one), ({s2: one}, g.transform, field.neg(one))])
        return terms, transform

    # Buchberger

    def buchberger(self, gens: Sequence[Polynomial], tracking: bool) -> List[_Element]:
        zero_mono = self.ring.zero_monomial()
        one = self.field.one
        current: List[_Element] = []
        for idx, g in enumerate(gens):
            if g.is_zero():
                continue
            transform = {idx: {zero_mono: one}} if tracking else None
            current.append(self._scale(_sorted_terms(g, self.order), transform))

        # Interreduce the input until it is stable
        while True:
            reduced: List[_Element] = []
            for i, e in enumerate(current):
                h = self.normal(dict(e.terms), e.transform, current[:i])
                if h is not None:
                    reduced.append(h)
            if [e.terms for e in reduced] == [e.terms for e in current]:
                break
            current = reduced

        f: List[_Element] = []
        index: Dict[tuple, int] = {}
        for e in current:
            k = tuple(e.terms)
            if k not in index:
                index[k] = len(f)
                f.append(e)

        key = self.key
        G: Set[int] = set()
        CP: Set[Tuple[int, int]] = set()
        pending = set(range(len(f)))
        while pending:
            ih = min(pending, key=lambda i: key(f[i].lm))
            pending.remove(ih)
            G, CP = self._update(f, G, CP, ih)

        while CP:
            check_budget()
            ig1, ig2 = min(CP, key=lambda pair: (key(monomial_lcm(f[pair[0]].lm, f[pair[1]].lm)), pair))
            CP.remove((ig1, ig2))
            self.reduced_pairs += 1
            terms, transform = self.spoly(f[ig1], f[ig2], tracking)
            divisors = sorted(G, key=lambda i: key(f[i].lm))
            h = self.normal(terms, transform, [f[i] for i in divisors]) if terms else None
            if h is None:
                self.zero_reductions += 1
                continue
            k = tuple(h.terms)
            if k not in index:
                index[k] = len(f)
                f.append(h)
            G, CP = self._update(f, G, CP, index[k])

        # Reduce the minimal basis
        result: List[_Element] = []
        for ig in sorted(G):
            others = sorted(G - {ig}, key=lambda i: key(f[i].lm))
            h = self.normal(dict(f[ig].terms), f[ig].transform, [f[i] for i in others])
            if h is not None:
                result.append(h)
        result.sort(key=lambda e: key(e.lm), reverse=True)
        return result

    def _update(self, f: List[_Element], G: Set[int], B: Set[Tuple[int, int]],
                ih: int) -> Tuple[Set[int], Set[Tuple[int, int]]]:
        """Gebauer-Moller: add f[ih] to G and refresh the critical pairs"""
        mh = f[ih].lm

        def divides(a: Monomial, b: Monomial) -> bool:
            return all(x <= y for x, y in zip(a, b))

        def coprime(a: Monomial, b: Monomial) -> bool:
            return all(not (x and y) for x, y in zip(a, b))

        C = sorted(G)
        D: Set[Tuple[int, int]] = set()
        while C:
            ig = C.pop()
            mg = f[ig].lm
            lcm_hg = monomial_lcm(mh, mg)

            def lcm_divides(ip: int) -> bool:
                return divides(monomial_lcm(mh, f[ip].lm), lcm_hg)

            if coprime(mh, mg) or (not any(lcm_divides(ipx) for ipx in C)
                                   and not any(lcm_divides(pr[1]) for pr in D)):
                D.add((ih, ig))

        E = {(h, g) for h, g in D if not coprime(mh, f[g].lm)}

        B_new: Set[Tuple[int, int]] = set()
        for ig1, ig2 in B:
            mg1, mg2 = f[ig1].lm, f[ig2].lm
            lcm12 = monomial_lcm(mg1, mg2)
            if (not divides(mh, lcm12) or monomial_lcm(mg1, mh) == lcm12
                    or monomial_lcm(mg2, mh) == lcm12):
                B_new.add((ig1, ig2))
        self.pruned_pairs += (len(G) - len(E)) + (len(B) - len(B_new))
        B_new |= E

        G_new = {ig for ig in G if not divides(mh, f[ig].lm)}
        G_new.add(ih)
        return G_new, B_new


def _common_ring(polys: Sequence[Polynomial], ring: Optional[Ring]) -> Ring:
    rings = {p.ring for p in polys}
    if ring is not None:
        rings.add(ring)
    if len(rings) != 1:
        if not rings:
            raise ValueError("Cannot infer the ring of an empty generator list")
        raise RingMismatchError("Generators live in different rings")
    return ring if ring is not None else polys[0].ring


def reduce(f: Polynomial, G: Sequence[Polynomial],
           order: Optional[MonomialOrder] = None) -> Tuple[Polynomial, List[Polynomial]]:
    """
    Multivariate division: f = sum(q[i] * G[i]) + remainder, and no remainder
    term is divisible by a leading monomial of G
    """
    ring = _common_ring([f] + list(G), None)
    order = order or ring.order
    engine = _Engine(ring, order)
    divisors = [_sorted_terms(g, order) for g in G]
    live = [i for i, d in enumerate(divisors) if d]
    quotients: List[Dict[Monomial, Value]] = [{} for _ in live]
    remainder = engine.reduce_terms(dict(f.terms), [divisors[i] for i in live], quotients)
    all_quotients = [ring.zero() for _ in G]
    for pos, i in enumerate(live):
        all_quotients[i] = Polynomial(ring, quotients[pos], _normalized=True)
    return Polynomial(ring, dict(remainder), _normalized=True), all_quotients


@monitor_execution('groebner')
def groebner(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
             with_transform: bool = False, ring: Optional[Ring] = None) -> ReducedGB:
    """
    Reduced Gröbner basis of the ideal generated by gens

    Args:
        gens: generators, zeros allowed
        order: monomial order, the ring's order when omitted
        with_transform: also express every basis element in gens
        ring: needed only when gens is empty

    Returns:
        ReducedGB
    """
    gens = tuple(gens)
    ring = _common_ring(gens, ring)
    order = order or ring.order
    engine = _Engine(ring, order)
    start = time.perf_counter()
    with _run_deadline():
        elements = engine.buchberger(gens, with_transform)
    duration_ms = (time.perf_counter() - start) * 1000

    basis = [Polynomial(ring, dict(e.terms), _normalized=True) for e in elements]
    transform = None
    if with_transform:
        transform = [[Polynomial(ring, e.transform.get(j, {}), _normalized=True) for j in range(len(gens))]
                     for e in elements]
    monitoring.record_groebner_run(ring.ngens, len(basis), engine.reduced_pairs,
                                   engine.pruned_pairs, duration_ms)
    if duration_ms > 1000:
        logger.info("Slow Gröbner basis", context={
            'variables': ring.ngens, 'generators': len(gens), 'basis': len(basis),
            'order': str(order), 'duration_ms': round(duration_ms, 1)})
    return ReducedGB(ring, order, basis, gens, transform)


def member_certificate(ideal, f: Polynomial) -> Optional[Certificate]:
    """
    Certificate for f in terms of the ideal's generators, or None when the
    normal form of f is nonzero.

    ideal may be an Ideal or a plain generator list.
    """
    if hasattr(ideal, 'groebner_basis'):
        gens = tuple(ideal.generators)
        gb = ideal.groebner_basis(with_transform=True)
    else:
        gens = tuple(ideal)
        gb = groebner(gens, with_transform=True, ring=f.ring)
    if gb.ring != f.ring:
        raise RingMismatchError(f"Target lives in {f.ring}, ideal in {gb.ring}")
    remainder, quotients = gb.quotients(f)
    if not remainder.is_zero():
        return None
    ring = f.ring
    coefficients = [ring.zero() for _ in gens]
    for q, row in zip(quotients, gb.transform):
        if q.is_zero():
            continue
        for j, t in enumerate(row):
            if t:
                coefficients[j] = coefficients[j] + q * t
    return Certificate(f, gens, coefficients)


def is_groebner(basis: Sequence[Polynomial], order: Optional[MonomialOrder] = None) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero"""
    basis = [g for g in basis if g]
    if not basis:
        return True
    ring = _common_ring(basis, None)
    order = order or ring.order
    engine = _Engine(ring, order)
    elements = [engine._scale(_sorted_terms(g, order), None) for g in basis]
    divisors = [e.terms for e in elements]
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            terms, _ = engine.spoly(elements[i], elements[j], False)
            if terms and engine.reduce_terms(terms, divisors):
                return False
    return True
