"""Algebraic rank, vcd bounds, the rank-3 table and the consolidated report."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import catalog
from .catalog import is_spherical, maximal_spherical_subsets
from .core import INF, CoxeterSystem, format_label, irreducible_components
from .davis import more_than_one_end_h1, rational_cd
from .decompose import INFINITY, EndsCount, ends, find_spherical_infinity_decomposition, is_virtually_free
from .errors import InvariantViolation, LimitExceeded, WrongRank
from .words import validate_thickness

SCHEMA_VERSION = 1
ALG_RANK_CAP = 14

SPHERICAL = "SPHERICAL"
VF_THEOREM = "VF_THEOREM"
AFFINE_TABLE = "AFFINE_TABLE"
HYPERBOLIC_TABLE = "HYPERBOLIC_TABLE"
RANK3_TABLE = "RANK3_TABLE"
PRODUCT_RULE = "PRODUCT_RULE"
DAVIS_LOWER_BOUND = "DAVIS_LOWER_BOUND"
KRAMMER_RULE = "KRAMMER_RULE"


def _mask_of(sys: CoxeterSystem, J) -> int:
    return sum(1 << sys.index(s) for s in J)


def _members(sys: CoxeterSystem, mask: int) -> frozenset:
    return frozenset(g for i, g in enumerate(sys.generators) if mask >> i & 1)


def algebraic_rank(sys: CoxeterSystem, cap: int = ALG_RANK_CAP) -> int:
    """Best total over families of pairwise-perpendicular irreducible
    non-spherical subsets; an affine piece ``I`` counts ``|I| - 1``, any
    other piece counts 1."""
    n = sys.rank
    if n > cap:
        raise LimitExceeded(f"algebraic rank search is capped at |S| <= {cap}")
    if is_spherical(sys):
        return 0
    # bit i of touch[i]: generators joined to i in the Coxeter diagram (m != 2), plus i
    touch = [0] * n
    for i in range(n):
        touch[i] = 1 << i
        for j in range(n):
            if i != j and sys.matrix[i][j] != 2:
                touch[i] |= 1 << j

    def connected(mask):
        start = mask & -mask
        seen, frontier = start, start
        while frontier:
            grow = 0
            f = frontier
            while f:
                b = f & -f
                grow |= touch[b.bit_length() - 1]
                f ^= b
            grow &= mask & ~seen
            seen |= grow
            frontier = grow
        return seen == mask

    contrib_cache: dict[int, int] = {}

    def contribution(mask):
        # 0 when the subset is not an irreducible non-spherical piece
        c = contrib_cache.get(mask)
        if c is None:
            c = 0
            if connected(mask):
                sub = sys.restrict(_members(sys, mask))
                if not is_spherical(sub):
                    c = sub.rank - 1 if catalog.is_affine_irreducible(sub) else 1
            contrib_cache[mask] = c
        return c

    def closure(mask):
        out = 0
        m = mask
        while m:
            b = m & -m
            out |= touch[b.bit_length() - 1]
            m ^= b
        return out

    memo: dict[int, int] = {}

    def best(avail):
        if avail == 0:
            return 0
        hit = memo.get(avail)
        if hit is not None:
            return hit
        low = avail & -avail
        rest = avail ^ low
        value = best(rest)
        # subsets of ``rest``, each joined with ``low``
        sub = rest
        while True:
            I = sub | low
            c = contribution(I)
            if c:
                value = max(value, c + best(avail & ~closure(I)))
            if sub == 0:
                break
            sub = (sub - 1) & rest
        memo[avail] = value
        return value

    return best((1 << n) - 1)


@dataclass(frozen=True)
class VcdBounds:
    lo: int
    hi: int
    provenance: str

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int | None:
        return self.lo if self.exact else None

    def __str__(self):
        return str(self.lo) if self.exact else f"[{self.lo},{self.hi}]"


RANK3_CASES = {
    "i": (0, 0, 0),
    "ii": (2, 2, 2),
    "iii": (1, 1, 1),
    "iv": (1, 2, 2),
}


@dataclass(frozen=True)
class Rank3Case:
    case: str
    alg_rank: int
    cd_q: int
    vcd: int

    @property
    def triple(self):
        return (self.alg_rank, self.cd_q, self.vcd)


def rank3_case(sys: CoxeterSystem) -> Rank3Case:
    if sys.rank != 3:
        raise WrongRank(f"rank-3 table needs |S| = 3, got {sys.rank}")
    a, b, c = sys.matrix[0][1], sys.matrix[1][2], sys.matrix[0][2]
    if INF in (a, b, c):
        tag = "iii"
    elif is_spherical(sys):
        tag = "i"
    elif catalog.is_affine_irreducible(sys):
        tag = "ii"
    else:
        # all finite, infinite, not affine: every rank-2 piece is dihedral, so compact hyperbolic
        tag = "iv"
    return Rank3Case(tag, *RANK3_CASES[tag])


def _irreducible_exact(sys: CoxeterSystem) -> VcdBounds | None:
    n = sys.rank
    if is_spherical(sys):
        return VcdBounds(0, 0, SPHERICAL)
    if is_virtually_free(sys):
        return VcdBounds(1, 1, VF_THEOREM)
    if n == 3:
        v = rank3_case(sys).vcd
        return VcdBounds(v, v, RANK3_TABLE)
    if len(irreducible_components(sys)) != 1:
        return None
    fam = catalog.classify_irreducible(sys).family
    if fam == catalog.AFFINE:
        return VcdBounds(n - 1, n - 1, AFFINE_TABLE)
    if fam == catalog.HYPERBOLIC_COMPACT:
        return VcdBounds(n - 1, n - 1, HYPERBOLIC_TABLE)
    if fam == catalog.HYPERBOLIC_NONCOMPACT:
        return VcdBounds(n - 2, n - 2, HYPERBOLIC_TABLE)
    return None


def vcd_bounds(sys: CoxeterSystem) -> VcdBounds:
    """Exact value from a covered case, else an interval from the Davis chamber."""
    hit = _irreducible_exact(sys)
    if hit is not None:
        return hit
    comps = irreducible_components(sys)
    if len(comps) > 1:
        parts = [_irreducible_exact(sys.restrict(C)) for C in comps]
        if all(p is not None for p in parts):
            total = sum(p.lo for p in parts)
            return VcdBounds(total, total, PRODUCT_RULE)
    lo = rational_cd(sys)
    top = max(len(M) for M in maximal_spherical_subsets(sys))
    return VcdBounds(lo, min(top, sys.rank - 1), DAVIS_LOWER_BOUND)


FLAT_RANK_NOTE = (
    "For a closed Weyl-transitive group G acting on a building of type (W,S): "
    "flat-rk(G) <= alg-rk(W) <= cd_Q(W) = cd_Q(G). Flat rank is not computed."
)

WEYL_NOTES = (
    "G is compact iff W is spherical.",
    "e(G) = 0 iff e(W) = 0, and e(G) = 1 iff e(W) = 1.",
    "When e(W) is 2 or infinite it is only a lower bound: e(W) <= e(G).",
    "The number of ends is not a Weyl invariant: W = D_inf has 2 ends, while "
    "SL_2(Q_p) has the same Weyl group and acts on the (p+1)-regular tree, so "
    "it has infinitely many ends.",
)


@dataclass(frozen=True)
class InvariantReport:
    system: CoxeterSystem
    ends: EndsCount
    cd_q: int
    alg_rank: int
    vcd: VcdBounds
    flat_rank_note: str
    weyl_notes: tuple[str, ...]
    thickness: dict | None = None
    flags: tuple[str, ...] = ()
    provenance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        sys = self.system
        comps = []
        for C, label in catalog.component_types(sys):
            comps.append({
                "generators": list(sys.ordered(C)),
                "family": label.family,
                "name": label.name,
            })
        vcd = {"lo": self.vcd.lo, "hi": self.vcd.hi, "exact": self.vcd.exact,
               "provenance": self.vcd.provenance}
        if self.vcd.exact:
            vcd["value"] = self.vcd.lo
        return {
            "schema": SCHEMA_VERSION,
            "system": {
                "generators": list(sys.generators),
                "rank": sys.rank,
                "spherical": is_spherical(sys),
                "components": comps,
                "order": format_label(catalog.group_order(sys)),
            },
            "ends": self.ends.value if self.ends.value != INFINITY else "inf",
            "cd_q": self.cd_q,
            "alg_rank": self.alg_rank,
            "vcd": vcd,
            "alg_rank_equals_cd_q": self.alg_rank == self.cd_q,
            "cd_q_equals_vcd": self.vcd.exact and self.cd_q == self.vcd.lo,
            "flags": list(self.flags),
            "thickness": self.thickness,
            "flat_rank_note": self.flat_rank_note,
            "weyl_notes": list(self.weyl_notes),
            "provenance": self.provenance,
        }


def invariant_report(sys: CoxeterSystem, thickness=None) -> InvariantReport:
    """Every invariant with its provenance; cross-route checks raise InvariantViolation."""
    q = validate_thickness(sys, thickness) if thickness is not None else None
    e = ends(sys)
    cd = rational_cd(sys)
    alg = algebraic_rank(sys)
    vcd = vcd_bounds(sys)

    xi_route = find_spherical_infinity_decomposition(sys) is not None
    h1_route = more_than_one_end_h1(sys)
    if xi_route != h1_route:
        raise InvariantViolation(
            f"splitting route says {xi_route}, cohomology route says {h1_route}"
        )
    if is_spherical(sys):
        if (alg, cd, vcd.lo, vcd.hi) != (0, 0, 0, 0):
            raise InvariantViolation("spherical system with a non-zero invariant")
    elif not (alg <= cd <= vcd.lo <= vcd.hi <= sys.rank - 1):
        raise InvariantViolation(
            f"chain alg {alg} <= cd {cd} <= vcd {vcd} <= {sys.rank - 1} fails"
        )

    flags = [KRAMMER_RULE]
    notes = list(WEYL_NOTES)
    if e.value == 2:
        notes.append("This W is two-ended; a group G with this Weyl group may have more ends.")
    return InvariantReport(
        system=sys,
        ends=e,
        cd_q=cd,
        alg_rank=alg,
        vcd=vcd,
        flat_rank_note=FLAT_RANK_NOTE,
        weyl_notes=tuple(notes),
        thickness=q,
        flags=tuple(flags),
        provenance={
            "ends": list(e.provenance),
            "ends_routes": {"XI_J_ROUTE": xi_route, "DAVIS_ROUTE": h1_route},
            "cd_q": "DAVIS_ROUTE",
            "alg_rank": KRAMMER_RULE,
            "vcd": vcd.provenance,
        },
    )
