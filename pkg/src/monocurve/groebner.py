"""Buchberger's algorithm with reduction transcripts, plus toric kernels.

The transcript is the point: every processed S-pair (i, j) records its
cofactors and the quotients of its reduction to zero, so that the first
syzygy module can be written down directly from the records.  Pairs with
coprime leading monomials (polynomial case only) are not reduced explicitly;
their certified reduction is the Koszul-style combination
S = -(tail_j/(c_i c_j)) g_i + (tail_i/(c_i c_j)) g_j, recorded as such.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from monocurve.poly import (
    EliminationOrder,
    Poly,
    Ring,
    Vect,
    coeff_div,
    divide,
    is_homogeneous,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    s_polynomial,
)
from monocurve.semigroup import SequenceSpec

VARIABLE_NAMES = ("X0", "X1", "X2", "Y")


@dataclass(frozen=True)
class PairRecord:
    """One processed S-pair: cofactor_i * g_i - cofactor_j * g_j = sum quotients[k] * g_k."""

    i: int
    j: int
    cofactor_i: Poly
    cofactor_j: Poly
    quotients: dict
    koszul: bool = False


@dataclass
class GroebnerBasis:
    elements: list
    order: object
    transcript: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def replay_ok(self) -> bool:
        """Re-check every transcript record by exact arithmetic."""
        for rec in self.transcript:
            lhs = rec.cofactor_i * self.elements[rec.i] - rec.cofactor_j * self.elements[rec.j]
            for k, h in rec.quotients.items():
                lhs = lhs - h * self.elements[k]
            if not lhs.is_zero:
                return False
        return True


def _lead_data(element, order, module: bool):
    lt = element.lead(order)
    if lt is None:
        raise ValueError("basis elements must be nonzero")
    if module:
        (pos, mono), coeff = lt
        return pos, mono, coeff
    mono, coeff = lt
    return None, mono, coeff


def _pair_priority(order, strategy, leads, i, j, counter):
    if strategy == "fifo":
        return (counter, i, j)
    pos_i, mono_i, _ = leads[i]
    _, mono_j, _ = leads[j]
    lcm = mono_lcm(mono_i, mono_j)
    key = order.key((pos_i, lcm)) if pos_i is not None else order.key(lcm)
    return (key, i, j)


def buchberger(gens, order, strategy: str = "normal", record: bool = True) -> GroebnerBasis:
    """Complete gens to a Gröbner basis; the input is kept as a prefix.

    strategy: "normal" picks the pair with the smallest lcm in the order,
    "fifo" processes pairs in creation order.  Both yield a correct basis;
    the default is fixed for reproducible transcripts.
    """
    if strategy not in ("normal", "fifo"):
        raise ValueError(f"unknown strategy {strategy!r}")
    elements = list(gens)
    if not elements:
        raise ValueError("need at least one generator")
    module = isinstance(elements[0], Vect)
    leads = [_lead_data(g, order, module) for g in elements]
    heap: list = []
    counter = 0

    def push_pairs(t: int):
        nonlocal counter
        for i in range(t):
            if module and leads[i][0] != leads[t][0]:
                continue
            counter += 1
            heapq.heappush(heap, _pair_priority(order, strategy, leads, i, t, counter))

    for t in range(1, len(elements)):
        push_pairs(t)

    transcript = []
    while heap:
        _, i, j = heapq.heappop(heap)
        gi, gj = elements[i], elements[j]
        pos_i, mono_i, ci = leads[i]
        _, mono_j, cj = leads[j]
        if not module and mono_coprime(mono_i, mono_j):
            # product criterion: reduction certified without division
            if record:
                scale = coeff_div(1, ci * cj)
                tail_i = gi - Poly(gi.ring, {mono_i: ci})
                tail_j = gj - Poly(gj.ring, {mono_j: cj})
                quots = {}
                hi = tail_j * (-scale)
                hj = tail_i * scale
                if not hi.is_zero:
                    quots[i] = hi
                if not hj.is_zero:
                    quots[j] = hj
                lcm = mono_lcm(mono_i, mono_j)
                transcript.append(
                    PairRecord(
                        i,
                        j,
                        gi.ring.monomial(mono_div(lcm, mono_i), coeff_div(1, ci)),
                        gi.ring.monomial(mono_div(lcm, mono_j), coeff_div(1, cj)),
                        quots,
                        koszul=True,
                    )
                )
            continue
        spair = s_polynomial(gi, gj, order)
        if spair is None:
            continue
        spoly, cof_i, cof_j = spair
        quotients, remainder = divide(spoly, elements, order)
        quots = {k: q for k, q in enumerate(quotients) if not q.is_zero}
        if not remainder.is_zero:
            t = len(elements)
            elements.append(remainder)
            leads.append(_lead_data(remainder, order, module))
            quots[t] = elements[0].ring.one()
            push_pairs(t)
        if record:
            transcript.append(PairRecord(i, j, cof_i, cof_j, quots))
    return GroebnerBasis(elements, order, transcript)


def is_groebner(gens, order) -> bool:
    """Buchberger criterion by honest division (no product-criterion shortcut)."""
    gens = list(gens)
    module = isinstance(gens[0], Vect)
    for j in range(1, len(gens)):
        for i in range(j):
            spair = s_polynomial(gens[i], gens[j], order)
            if spair is None:
                continue
            _, remainder = divide(spair[0], gens, order)
            if not remainder.is_zero:
                return False
    return True


def _minimalize_elements(elements, order):
    """Drop elements whose lead is divisible by another's lead."""
    module = isinstance(elements[0], Vect)
    indexed = sorted(range(len(elements)), key=lambda k: order.key(elements[k].lead(order)[0]))
    kept: list = []
    for k in indexed:
        lead_k = elements[k].lead(order)[0]
        redundant = False
        for other in kept:
            lead_o = other.lead(order)[0]
            if module:
                if lead_o[0] == lead_k[0] and mono_divides(lead_o[1], lead_k[1]):
                    redundant = True
                    break
            elif mono_divides(lead_o, lead_k):
                redundant = True
                break
        if not redundant:
            kept.append(elements[k])
    return kept


def reduce_basis(gb: GroebnerBasis) -> GroebnerBasis:
    """Reduced Gröbner basis: monic leads, fully tail-reduced, sorted by
    ascending leading monomial.  Unique for the given order."""
    order = gb.order
    kept = _minimalize_elements(list(gb.elements), order)
    reduced = []
    for idx, g in enumerate(kept):
        others = [h for k, h in enumerate(kept) if k != idx]
        if others:
            _, g = divide(g, others, order)
        _, coeff = g.lead(order)
        reduced.append(g * coeff_div(1, coeff))
    reduced.sort(key=lambda g: order.key(g.lead(order)[0]))
    completed = buchberger(reduced, order)
    if len(completed.elements) != len(reduced):  # pragma: no cover - safety net
        raise AssertionError("reduce_basis input was not a Gröbner basis")
    return completed


def ideal_member(f: Poly, gb: GroebnerBasis) -> bool:
    if f.is_zero:
        return True
    _, remainder = divide(f, gb.elements, gb.order)
    return remainder.is_zero


def is_pure_difference(p: Poly) -> bool:
    """Two terms, coefficients +1 and -1."""
    if len(p.terms) != 2:
        return False
    return sorted(p.terms.values()) == [-1, 1]


def vanishes_under_substitution(p: Poly, weights) -> bool:
    """Does p vanish under x_i -> t^{w_i}?  (Coefficient sums per weighted degree.)"""
    sums: dict = {}
    for mono, coeff in p.terms.items():
        d = sum(e * w for e, w in zip(mono, weights))
        sums[d] = sums.get(d, 0) + coeff
    return all(v == 0 for v in sums.values())


@dataclass
class ToricIdeal:
    """Defining ideal of the monomial curve, with its reduced Gröbner basis."""

    spec: SequenceSpec
    ring: Ring
    generators: list
    reduced_gb: GroebnerBasis

    def validate(self) -> None:
        for p in self.generators:
            if not is_pure_difference(p):
                raise AssertionError(f"not a pure difference binomial: {p}")
            if is_homogeneous(p, self.ring) is None:
                raise AssertionError(f"not weighted-homogeneous: {p}")
            if not vanishes_under_substitution(p, self.ring.weights):
                raise AssertionError(f"does not vanish under substitution: {p}")


def _default_names(count: int):
    defaults = ("x", "y", "z", "w", "u", "v")
    return defaults[:count]


def toric_kernel_elimination(weights, names=None):
    """Kernel of k[names] -> k[t], x_i -> t^{w_i}, by elimination.

    The textbook construction: append T, complete {x_i - T^{w_i}} under an
    elimination order, keep the T-free part.  Cost grows steeply with the
    weights (T-exponents reach lcm scale), so this serves as a reference to
    cross-check the lattice construction on moderate inputs.

    Returns (ring, gb) where gb is the reduced Gröbner basis of the kernel
    under the ring's weighted grevlex order, with a fresh transcript.
    """
    weights = tuple(int(w) for w in weights)
    if names is None:
        names = _default_names(len(weights))
    ring = Ring(tuple(names), weights)
    ext = ring.extended("T", 1)
    gens = []
    for i, w in enumerate(weights):
        mono = [0] * ext.nvars
        mono[i] = 1
        tpow = [0] * ext.nvars
        tpow[-1] = w
        gens.append(Poly(ext, {tuple(mono): 1, tuple(tpow): -1}))
    gb = buchberger(gens, EliminationOrder(ext), record=False)
    tfree = []
    for p in gb.elements:
        if all(m[-1] == 0 for m in p.terms):
            tfree.append(Poly(ring, {m[:-1]: c for m, c in p.terms.items()}))
    # T-free elements of an elimination basis are a basis for the intersection
    # under the restricted order, which is exactly the ring's grevlex
    reduced = reduce_basis(GroebnerBasis(tfree, ring.order()))
    return ring, reduced


def _extended_gcd(a: int, b: int):
    """(g, s, t) with s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    return old_r, old_s, old_t


def _size_reduce(vectors):
    """Pairwise integer size-reduction; unimodular, so the lattice is kept."""
    vecs = [list(v) for v in vectors]
    for _ in range(32):
        changed = False
        for i in range(len(vecs)):
            for j in range(len(vecs)):
                if i == j:
                    continue
                denom = sum(e * e for e in vecs[j])
                if denom == 0:
                    continue
                num = sum(a * b for a, b in zip(vecs[i], vecs[j]))
                k = round(num / denom)
                if k:
                    cand = [a - k * b for a, b in zip(vecs[i], vecs[j])]
                    if sum(e * e for e in cand) < sum(e * e for e in vecs[i]):
                        vecs[i] = cand
                        changed = True
        if not changed:
            break
    return [tuple(v) for v in vecs]


def _kernel_lattice_basis(weights):
    """Basis of the full integer kernel lattice of the weight row.

    Sequential gcd elimination: keep a certificate c with c·w[:i] = g; each
    new weight contributes one kernel vector, and the certificate absorbs it.
    """
    k = len(weights)
    basis = []
    g = weights[0]
    cert = [1] + [0] * (k - 1)
    for i in range(1, k):
        g2, s, t = _extended_gcd(g, weights[i])
        vec = [weights[i] // g2 * c for c in cert]
        vec[i] -= g // g2
        basis.append(vec)
        cert = [s * c for c in cert]
        cert[i] += t
        g = g2
    return _size_reduce(basis)


def _strip_variable(p: Poly, index: int) -> Poly:
    low = min(m[index] for m in p.terms)
    if low == 0:
        return p
    terms = {}
    for mono, c in p.terms.items():
        m = list(mono)
        m[index] -= low
        terms[tuple(m)] = c
    return Poly(p.ring, terms)


def toric_kernel_generic(weights, names=None):
    """Kernel of k[names] -> k[t], x_i -> t^{w_i}, via the relation lattice.

    Start from binomials of a kernel-lattice basis of the weights, then
    saturate one variable at a time: complete under grevlex with that
    variable cheapest and divide each element by the variable's common
    power.  (A weighted-homogeneous element whose lead the cheapest variable
    divides is divisible by it throughout, which is exactly why the division
    yields the saturation.)  After all variables the ideal is the full
    kernel.  Everything runs in the target ring with small exponents, unlike
    elimination, whose auxiliary variable carries weight-sized powers.

    Returns (ring, gb) as in toric_kernel_elimination.
    """
    weights = tuple(int(w) for w in weights)
    if names is None:
        names = _default_names(len(weights))
    ring = Ring(tuple(names), weights)
    gens = []
    for vec in _kernel_lattice_basis(weights):
        plus = tuple(max(e, 0) for e in vec)
        minus = tuple(max(-e, 0) for e in vec)
        gens.append(ring.monomial(plus) - ring.monomial(minus))
    for i in range(ring.nvars):
        perm = (i,) + tuple(j for j in range(ring.nvars) if j != i)
        sat_ring = Ring(
            tuple(ring.names[j] for j in perm), tuple(ring.weights[j] for j in perm)
        )
        moved = [
            Poly(sat_ring, {tuple(m[j] for j in perm): c for m, c in p.terms.items()})
            for p in gens
        ]
        completed = buchberger(moved, sat_ring.order(), record=False)
        gens = []
        for p in completed.elements:
            stripped = _strip_variable(p, 0)
            back = {}
            for mono, c in stripped.terms.items():
                orig = [0] * ring.nvars
                for k, j in enumerate(perm):
                    orig[j] = mono[k]
                back[tuple(orig)] = c
            gens.append(Poly(ring, back))
    completed = buchberger(gens, ring.order(), record=False)
    reduced = reduce_basis(completed)
    return ring, reduced


def toric_kernel(spec: SequenceSpec) -> ToricIdeal:
    """Defining ideal of the curve (t^{m0}, t^{m1}, t^{m2}, t^{n})."""
    ring, gb = toric_kernel_generic(spec.weights, VARIABLE_NAMES)
    ideal = ToricIdeal(spec, ring, list(gb.elements), gb)
    ideal.validate()
    return ideal
