"""Model knot Floer complexes: staircase, box, twist-knot mirrors, dual pieces.

Generators are stored through their i = 0 translate, so the classical
(i,j)-plane pictures read as follows.  The three-step staircase of the
left-handed trefoil has dots at (0,1), (0,0), (1,0) with both arrows
pointing into the corner (0,0); the length-one box has dots at
(1,1), (0,1), (1,0), (0,0) with arrows a -> b, a -> c, b -> d, c -> d.
The mirror of the n-th odd twist knot (two-bridge fraction (2n+1)/(n+1))
is one staircase plus (n-1)/2 boxes.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import (
    FilteredComplex,
    Generator,
    GradedRanks,
    bigraded_slice,
    hat_slice,
    homology,
    j_graded,
    require_valid,
)
from .errors import BadParameter, NonIntegral, UnsupportedModel


def staircase() -> FilteredComplex:
    """Full knot complex of the left-handed trefoil: d(x) = y, d(z) = U y."""
    gens = [Generator("x", 1, 2), Generator("y", 0, 1), Generator("z", -1, 0)]
    return FilteredComplex(gens, {"x": {"y": 0}, "z": {"y": 1}})


def box(suffix: str = "") -> FilteredComplex:
    """Length-one box summand: d(a) = U b + c, d(b) = d, d(c) = U d."""
    a, b, c, d = (name + suffix for name in "abcd")
    gens = [
        Generator(a, 0, 1),
        Generator(b, 1, 2),
        Generator(c, -1, 0),
        Generator(d, 0, 1),
    ]
    return FilteredComplex(gens, {a: {b: 1, c: 0}, b: {d: 0}, c: {d: 1}})


def unknot() -> FilteredComplex:
    """Single generator at the origin with zero differential."""
    return FilteredComplex([Generator("o", 0, 0)], {})


def direct_sum(*parts: FilteredComplex) -> FilteredComplex:
    gens: list[Generator] = []
    diff: dict[str, dict[str, int]] = {}
    for part in parts:
        gens.extend(part.generators)
        for src, row in part.differential.items():
            diff[src] = dict(row)
    return FilteredComplex(gens, diff)


def minus_twist_knot(n: int) -> FilteredComplex:
    """Mirror twist-knot model: staircase plus (n-1)/2 boxes, n odd >= 1."""
    if not isinstance(n, int) or n < 1 or n % 2 == 0:
        raise BadParameter(f"n must be a positive odd integer, got {n!r}")
    parts = [staircase()]
    parts += [box(str(i)) for i in range(1, (n - 1) // 2 + 1)]
    return direct_sum(*parts)


def dual_normal_form_model(n: int) -> FilteredComplex:
    """The surgered-manifold dual-knot complex in normal form.

    One free generator o plus (n+1)/2 horizontal pairs (d(yh) = U xh,
    yh placed at (1,0)) and as many vertical pairs (d(yv) = xv, yv at (0,1)).
    """
    if not isinstance(n, int) or n < 1 or n % 2 == 0:
        raise BadParameter(f"n must be a positive odd integer, got {n!r}")
    gens = [Generator("o", 0, 0)]
    diff: dict[str, dict[str, int]] = {}
    for i in range(1, (n + 1) // 2 + 1):
        gens += [
            Generator(f"xh{i}", 0, 1),
            Generator(f"yh{i}", -1, 0),
            Generator(f"xv{i}", 0, 1),
            Generator(f"yv{i}", 1, 2),
        ]
        diff[f"yh{i}"] = {f"xh{i}": 1}
        diff[f"yv{i}"] = {f"xv{i}": 0}
    return FilteredComplex(gens, diff)


def mirror(c: FilteredComplex) -> FilteredComplex:
    """Dual complex: arrows reversed, Alexander and Maslov data negated."""
    require_valid(c)
    gens = [Generator(g.name, -g.alexander, -g.maslov) for g in c.generators]
    diff: dict[str, dict[str, int]] = {}
    for src, tgt, k in c.entries():
        diff.setdefault(tgt, {})[src] = k
    return FilteredComplex(gens, diff)


# -- flip maps --------------------------------------------------------------


class FlipMap:
    """Reflection along i = j, encoded by a generator involution.

    The pairing sigma must satisfy alexander(sigma g) = -alexander(g) and
    maslov(sigma g) = maslov(g) - 2 alexander(g); the induced module map
    g -> U^(-alexander(g)) sigma(g) is then a skew-filtered chain
    isomorphism squaring to the identity.
    """

    def __init__(self, c: FilteredComplex, pairing: dict[str, str]):
        violations = flip_violations(c, pairing)
        if violations:
            raise UnsupportedModel("invalid flip pairing: " + "; ".join(violations))
        self.source = c
        self.pairing = dict(pairing)

    def __call__(self, name: str) -> tuple[str, int]:
        """Image of a stored generator, as (generator, U-power)."""
        g = self.source.generator(name)
        power = -g.alexander
        if power.denominator != 1:
            raise NonIntegral(f"flip power for {name} is not an integer")
        return self.pairing[name], int(power)


def flip_violations(c: FilteredComplex, pairing: dict[str, str]) -> list[str]:
    bad: list[str] = []
    names = {g.name for g in c.generators}
    if set(pairing) != names or set(pairing.values()) != names:
        return ["pairing is not a bijection on the generators"]
    for name, image in pairing.items():
        if pairing[image] != name:
            bad.append(f"not an involution at {name}")
        g, h = c.generator(name), c.generator(image)
        if h.alexander != -g.alexander:
            bad.append(f"{name}: image Alexander grading is not negated")
        elif h.maslov != g.maslov - 2 * g.alexander:
            bad.append(f"{name}: image Maslov grading mismatch")
    if bad:
        return bad
    # chain map: g -> U^k h must correspond to sigma(g) -> U^(jdrop) sigma(h)
    for src, tgt, k in c.entries():
        jd = c.j_drop(src, tgt, k)
        image_row = c.differential.get(pairing[src], {})
        if image_row.get(pairing[tgt]) != jd:
            bad.append(f"entry {src} -> U^{k} {tgt} has no mirror entry")
    expected = sum(len(r) for r in c.differential.values())
    got = sum(len(c.differential.get(pairing[s], {})) for s in c.differential)
    if not bad and expected != got:
        bad.append("extra entries in the reflected differential")
    return bad


def flip(c: FilteredComplex) -> FlipMap:
    """Search for a reflection basis; UnsupportedModel if none exists."""
    require_valid(c)
    names = [g.name for g in c.generators]
    candidates: dict[str, list[str]] = {}
    for g in c.generators:
        cands = [
            h.name
            for h in c.generators
            if h.alexander == -g.alexander and h.maslov == g.maslov - 2 * g.alexander
        ]
        if not cands:
            raise UnsupportedModel(f"no reflection partner for {g.name}")
        candidates[g.name] = cands

    order = sorted(names, key=lambda n: (len(candidates[n]), c.order(n)))
    pairing: dict[str, str] = {}

    def entries_consistent() -> bool:
        # chain-map condition on the pairs decided so far
        for src, tgt, k in c.entries():
            if src in pairing and tgt in pairing:
                jd = c.j_drop(src, tgt, k)
                if c.differential.get(pairing[src], {}).get(pairing[tgt]) != jd:
                    return False
        return True

    def assign(i: int) -> bool:
        while i < len(order) and order[i] in pairing:
            i += 1
        if i == len(order):
            return not flip_violations(c, pairing)
        name = order[i]
        for cand in candidates[name]:
            if cand in pairing and pairing[cand] != name:
                continue
            if cand == name or cand not in pairing:
                pairing[name] = cand
                pairing[cand] = name
                if entries_consistent() and assign(i + 1):
                    return True
                pairing.pop(name, None)
                if cand != name:
                    pairing.pop(cand, None)
        return False

    if not assign(0):
        raise UnsupportedModel("no reflection basis found for this complex")
    return FlipMap(c, pairing)


# -- knot-level homology ----------------------------------------------------


def hat_knot_homology(c: FilteredComplex, keys=("alexander", "maslov")) -> GradedRanks:
    """Hat-flavor knot homology from the i = 0 slice (bidegree-preserving part)."""
    require_valid(c)
    return homology(bigraded_slice(c), keys)


def hat_manifold_homology(c: FilteredComplex) -> GradedRanks:
    """Homology of the i = 0 column: the ambient manifold's hat invariant."""
    require_valid(c)
    return homology(hat_slice(c), ("maslov",))


def hfk_minus(c: FilteredComplex, s) -> GradedRanks:
    """Minus-flavor knot homology in Alexander grading s.

    The slice {i <= 0, j = s} is spanned by the translates U^(A(g)-s) g over
    generators with A(g) >= s, with the j-preserving part of d; it is finite
    dimensional over GF(2), so the ranks per Maslov grading are exact.
    """
    require_valid(c)
    slice_gens = []
    keep = set()
    for g in c.generators:
        shift = g.alexander - Fraction(s)
        if shift >= 0:
            keep.add(g.name)
            slice_gens.append(Generator(g.name, g.alexander, g.maslov - 2 * shift))
    diff = {
        src: {
            tgt: 0
            for tgt, k in row.items()
            if tgt in keep and c.j_drop(src, tgt, k) == 0
        }
        for src, row in c.differential.items()
        if src in keep
    }
    return homology(FilteredComplex(slice_gens, diff), ("maslov",))


def hfk_minus_module(c: FilteredComplex, keys=("alexander", "maslov")) -> GradedRanks:
    """Minus-flavor knot homology as a GF(2)[U]-module (all s at once)."""
    require_valid(c)
    return homology(j_graded(c), keys)


def hat_column(c: FilteredComplex) -> FilteredComplex:
    """The j = 0 column: every generator's translate at j = 0, with the
    j-preserving differential.  Computes the same manifold invariant as the
    i = 0 column, through the other filtration."""
    gens = [Generator(g.name, g.alexander, g.maslov - 2 * g.alexander) for g in c.generators]
    diff = {
        src: {tgt: 0 for tgt, k in row.items() if c.j_drop(src, tgt, k) == 0}
        for src, row in c.differential.items()
    }
    return FilteredComplex(gens, diff)


# -- Alexander polynomial ----------------------------------------------------


def alexander_polynomial(c: FilteredComplex) -> dict[int, int]:
    """Graded Euler characteristic of hat-flavor knot homology.

    Returns {alexander: coefficient}; symmetric in t <-> 1/t for the models,
    and |value at t = -1| is the knot determinant.
    """
    ranks = hat_knot_homology(c)
    poly: dict[int, int] = {}
    for (alex, maslov), rank in ranks.ranks.items():
        if isinstance(maslov, Fraction) or isinstance(alex, Fraction):
            raise NonIntegral("Euler characteristic needs integral gradings")
        poly[alex] = poly.get(alex, 0) + (-1) ** maslov * rank
    return {a: coef for a, coef in sorted(poly.items()) if coef}


def evaluate_poly(poly: dict[int, int], t: Fraction) -> Fraction:
    return sum((coef * Fraction(t) ** a for a, coef in poly.items()), Fraction(0))


def poly_string(poly: dict[int, int]) -> str:
    if not poly:
        return "0"
    parts = []
    for a, coef in sorted(poly.items(), reverse=True):
        term = "1" if a == 0 else ("t" if a == 1 else f"t^{a}")
        if a != 0 and abs(coef) != 1:
            term = f"{abs(coef)}{term}"
        elif a == 0:
            term = str(abs(coef))
        parts.append(("- " if coef < 0 else "+ ") + term)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]
