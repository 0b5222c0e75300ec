"""Symbolic catalog of admissible generating manifolds and bouquets.

Every entry is closed and orientable and carries closed-form integral
homology plus a *certified* embedding dimension: an upper bound for which
the catalog can vouch, not the true minimum.  Geometric existence of the
fancier entries (sphere-homology manifolds, bundle total spaces) is a
trusted side condition; the bubbling engine only ever consumes homology,
dimension, and embeddability.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ValidationError
from .pid_algebra import (
    FGModule,
    GradedModule,
    INTEGERS,
    cyclic,
    direct_sum_many,
    free_module,
    kunneth,
    zero_module,
)


@dataclass(frozen=True)
class ManifoldDesc:
    """A closed manifold the engine may bubble along."""

    label: str
    dim: int
    orientable: bool
    connected: bool
    homology: GradedModule  # integral, top degree == dim
    embed_dim: int  # certified ambient Euclidean dimension
    spec: dict  # constructor record; doubles as the JSON form
    closed: bool = True

    def __post_init__(self):
        if self.homology.ring != INTEGERS:
            raise ValidationError("catalog homology is integral")
        if self.homology.top != self.dim:
            raise ValidationError(
                f"{self.label}: homology top {self.homology.top} != dim {self.dim}"
            )


@dataclass(frozen=True)
class BouquetDesc:
    """A one-point union of catalog manifolds (a generating polyhedron)."""

    label: str
    summands: tuple[ManifoldDesc, ...]
    homology: GradedModule
    spec: dict


def _graded(dim: int, pieces: dict[int, FGModule]) -> GradedModule:
    mods = [pieces.get(i, zero_module()) for i in range(dim + 1)]
    return GradedModule(INTEGERS, tuple(mods))


# ---------------------------------------------------------------------------
# atomic constructors


def point() -> ManifoldDesc:
    return ManifoldDesc(
        label="pt",
        dim=0,
        orientable=True,
        connected=True,
        homology=_graded(0, {0: free_module(INTEGERS, 1)}),
        embed_dim=1,
        spec={"kind": "point"},
    )


def sphere(k: int) -> ManifoldDesc:
    """Standard k-sphere.  S^0 is the one disconnected catalog entry."""
    if k < 0:
        raise ValidationError(f"sphere dimension must be >= 0, got {k}")
    if k == 0:
        homology = _graded(0, {0: free_module(INTEGERS, 2)})
    else:
        homology = _graded(k, {0: free_module(INTEGERS, 1), k: free_module(INTEGERS, 1)})
    return ManifoldDesc(
        label=f"S^{k}",
        dim=k,
        orientable=True,
        connected=k >= 1,
        homology=homology,
        embed_dim=k + 1,
        spec={"kind": "sphere", "dim": k},
    )


def surface(genus: int) -> ManifoldDesc:
    """Closed orientable surface of the given genus."""
    if genus < 0:
        raise ValidationError(f"genus must be >= 0, got {genus}")
    homology = _graded(
        2,
        {
            0: free_module(INTEGERS, 1),
            1: free_module(INTEGERS, 2 * genus),
            2: free_module(INTEGERS, 1),
        },
    )
    return ManifoldDesc(
        label=f"Sigma_{genus}",
        dim=2,
        orientable=True,
        connected=True,
        homology=homology,
        embed_dim=3,
        spec={"kind": "surface", "genus": genus},
    )


def lens(p: int, q: int) -> ManifoldDesc:
    """Lens space L(p, q): the workhorse for finite first homology."""
    if p < 2 or gcd(p, q) != 1:
        raise ValidationError(f"lens space needs p >= 2 and gcd(p, q) = 1, got ({p}, {q})")
    homology = _graded(
        3,
        {0: free_module(INTEGERS, 1), 1: cyclic(p), 3: free_module(INTEGERS, 1)},
    )
    return ManifoldDesc(
        label=f"L({p},{q})",
        dim=3,
        orientable=True,
        connected=True,
        homology=homology,
        embed_dim=5,
        spec={"kind": "lens", "p": p, "q": q},
    )


def homology_sphere(d: int) -> ManifoldDesc:
    """Bookkeeping entry: a closed orientable d-manifold with sphere homology.

    The standard sphere realizes the entry, so embeddability is certified
    at d + 1; callers needing an exotic representative must supply their
    own embedding certificate.
    """
    if d < 1:
        raise ValidationError(f"homology sphere dimension must be >= 1, got {d}")
    homology = _graded(d, {0: free_module(INTEGERS, 1), d: free_module(INTEGERS, 1)})
    return ManifoldDesc(
        label=f"HS^{d}",
        dim=d,
        orientable=True,
        connected=True,
        homology=homology,
        embed_dim=d + 1,
        spec={"kind": "homology_sphere", "dim": d},
    )


def make_atomic(spec: dict) -> ManifoldDesc:
    """Dispatch an atomic constructor from its JSON record."""
    kind = spec.get("kind")
    if kind == "point":
        return point()
    if kind == "sphere":
        return sphere(spec["dim"])
    if kind == "surface":
        return surface(spec["genus"])
    if kind == "lens":
        return lens(spec["p"], spec["q"])
    if kind == "homology_sphere":
        return homology_sphere(spec["dim"])
    raise ValidationError(f"unknown atomic manifold kind {kind!r}")


# ---------------------------------------------------------------------------
# composite constructors


def _product_embed_dim(a: ManifoldDesc, b: ManifoldDesc) -> int:
    # Sum of factor embeddings always works.  When one factor is a standard
    # sphere S^k (k >= 1) and the other sits in its certified embedding with
    # codimension <= 2, the other factor's normal bundle is trivial (it is
    # orientable and of codimension <= 2 in Euclidean space), so X x S^k
    # embeds as a sphere subbundle of a trivialized normal bundle: ambient
    # max(embed(X), dim X + k + 1).
    candidates = [a.embed_dim + b.embed_dim]
    if b.spec.get("kind") == "sphere" and b.dim >= 1 and a.embed_dim - a.dim <= 2:
        candidates.append(max(a.embed_dim, a.dim + b.dim + 1))
    if a.spec.get("kind") == "sphere" and a.dim >= 1 and b.embed_dim - b.dim <= 2:
        candidates.append(max(b.embed_dim, b.dim + a.dim + 1))
    return min(candidates)


def product(a: ManifoldDesc, b: ManifoldDesc) -> ManifoldDesc:
    """Cartesian product; homology via the product formula."""
    return ManifoldDesc(
        label=f"{a.label} x {b.label}",
        dim=a.dim + b.dim,
        orientable=a.orientable and b.orientable,
        connected=a.connected and b.connected,
        homology=kunneth(a.homology, b.homology),
        embed_dim=_product_embed_dim(a, b),
        spec={"kind": "product", "factors": [a.spec, b.spec]},
    )


def connected_sum(parts) -> ManifoldDesc:
    """Connected sum of orientable manifolds of equal dimension >= 2."""
    parts = list(parts)
    if not parts:
        raise ValidationError("connected sum needs at least one part")
    if len(parts) == 1:
        return parts[0]
    d = parts[0].dim
    if d < 2:
        raise ValidationError(f"connected sum needs dimension >= 2, got {d}")
    for m in parts:
        if m.dim != d:
            raise ValidationError(f"connected sum mixes dimensions {d} and {m.dim}")
        if not m.orientable:
            raise ValidationError(f"connected sum part {m.label} is not orientable")
        if not m.connected:
            raise ValidationError(f"connected sum part {m.label} is not connected")
    pieces: dict[int, FGModule] = {
        0: free_module(INTEGERS, 1),
        d: free_module(INTEGERS, 1),
    }
    for i in range(1, d):
        pieces[i] = direct_sum_many(INTEGERS, [m.homology.at(i) for m in parts])
    return ManifoldDesc(
        label=" # ".join(m.label for m in parts),
        dim=d,
        orientable=True,
        connected=True,
        homology=_graded(d, pieces),
        embed_dim=max(m.embed_dim for m in parts),
        spec={"kind": "connected_sum", "parts": [m.spec for m in parts]},
    )


def realize_finite_abelian_h1(group: FGModule) -> ManifoldDesc:
    """A closed orientable 3-manifold with the given finite first homology.

    Connected sum of lens spaces L(d, 1) over the invariant factors; the
    3-sphere covers the trivial group.  Result: (Z, group, 0, Z).
    """
    if group.ring != INTEGERS:
        raise ValidationError("first-homology target must be an integer module")
    if group.rank != 0:
        raise ValidationError(
            f"first-homology target must be finite, got free rank {group.rank}"
        )
    if not group.torsion:
        return sphere(3)
    return connected_sum([lens(d, 1) for d in group.torsion])


def bundle_total_space(s: ManifoldDesc, n: int, k: int, l: int) -> ManifoldDesc:
    """Total space of an oriented sphere bundle with vanishing Euler class.

    Fiber S^(k-l-1) over a base of dimension n-k embeddable in ambient
    dimension n-l; the homology is the fully split form
    H_j(S') = H_j(S) (+) H_(j-(k-l-1))(S), which the trivial bundle
    realizes.  The result is certified embeddable in ambient dimension n.
    """
    if l < 0:
        raise ValidationError(f"need l >= 0, got l = {l}")
    if not l + 1 < k:
        raise ValidationError(f"need l + 1 < k, got l = {l}, k = {k}")
    if not k < n:
        raise ValidationError(f"need k < n, got k = {k}, n = {n}")
    if s.dim != n - k:
        raise ValidationError(f"base dimension must be n - k = {n - k}, got {s.dim}")
    if not s.orientable:
        raise ValidationError(f"base {s.label} must be orientable")
    if not s.connected:
        raise ValidationError(f"base {s.label} must be connected")
    if s.embed_dim > n - l:
        raise ValidationError(
            f"base {s.label} needs ambient dimension {s.embed_dim}, only n - l = {n - l} available"
        )
    fiber = k - l - 1
    dim = n - l - 1
    pieces = {}
    for j in range(dim + 1):
        pieces[j] = direct_sum_many(
            INTEGERS, [s.homology.at(j), s.homology.at(j - fiber)]
        )
    return ManifoldDesc(
        label=f"S^{fiber}-bundle({s.label})",
        dim=dim,
        orientable=True,
        connected=True,
        homology=_graded(dim, pieces),
        embed_dim=n,
        spec={"kind": "bundle_total", "base": s.spec, "n": n, "k": k, "l": l},
    )


def make_bouquet(parts) -> BouquetDesc:
    """Wedge of connected orientable closed manifolds.

    Homology: Z in degree 0 plus the degreewise sum of reduced homologies.
    """
    parts = list(parts)
    if not parts:
        raise ValidationError("a bouquet needs at least one summand")
    for m in parts:
        if not m.connected:
            raise ValidationError(f"bouquet summand {m.label} is not connected")
        if not m.orientable:
            raise ValidationError(f"bouquet summand {m.label} is not orientable")
        if not m.closed:
            raise ValidationError(f"bouquet summand {m.label} is not closed")
    top = max(m.dim for m in parts)
    pieces = {0: free_module(INTEGERS, 1)}
    for i in range(1, top + 1):
        pieces[i] = direct_sum_many(INTEGERS, [m.homology.at(i) for m in parts])
    return BouquetDesc(
        label=" v ".join(m.label for m in parts),
        summands=tuple(parts),
        homology=_graded(top, pieces),
        spec={"kind": "bouquet", "summands": [m.spec for m in parts]},
    )


def manifold_from_spec(obj) -> ManifoldDesc:
    """Recursive JSON-spec constructor for manifolds (not bouquets)."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValidationError(f"manifold spec must be an object with a 'kind', got {obj!r}")
    kind = obj["kind"]
    if kind in ("point", "sphere", "surface", "lens", "homology_sphere"):
        return make_atomic(obj)
    if kind == "product":
        factors = [manifold_from_spec(f) for f in obj["factors"]]
        if not factors:
            raise ValidationError("product needs at least one factor")
        out = factors[0]
        for f in factors[1:]:
            out = product(out, f)
        return out
    if kind == "connected_sum":
        return connected_sum([manifold_from_spec(p) for p in obj["parts"]])
    if kind == "bundle_total":
        base = manifold_from_spec(obj["base"])
        return bundle_total_space(base, obj["n"], obj["k"], obj["l"])
    raise ValidationError(f"unknown manifold kind {kind!r}")


def generator_from_spec(obj):
    """Like manifold_from_spec but also accepts bouquets."""
    if isinstance(obj, dict) and obj.get("kind") == "bouquet":
        return make_bouquet([manifold_from_spec(s) for s in obj["summands"]])
    return manifold_from_spec(obj)


# ---------------------------------------------------------------------------
# checks


def duality_symmetric(dim: int, homology: GradedModule) -> bool:
    """Rank symmetry H_i ~ H_(d-i) and torsion symmetry T_i ~ T_(d-i-1)."""
    for i in range(dim + 1):
        if homology.at(i).rank != homology.at(dim - i).rank:
            return False
        if homology.at(i).torsion != homology.at(dim - i - 1).torsion:
            return False
    return True


def check_poincare_duality(m: ManifoldDesc) -> bool:
    return duality_symmetric(m.dim, m.homology)


def check_embeddable(m: ManifoldDesc, ambient: int) -> bool:
    """True iff the certified embedding dimension fits in the ambient space."""
    if not isinstance(ambient, int) or ambient < 1:
        raise ValidationError(f"ambient dimension must be an integer >= 1, got {ambient!r}")
    return m.embed_dim <= ambient


# ---------------------------------------------------------------------------
# the standard grid used by the oracle cross-check and the CLI


def standard_catalog_grid(
    max_sphere: int = 6,
    max_genus: int = 4,
    max_lens_p: int = 7,
    max_wedge_spheres: int = 4,
    max_wedge_dim: int = 4,
    product_dim_cap: int = 6,
):
    """Every oracle-expressible entry in the acceptance sweep."""
    from itertools import combinations_with_replacement

    atoms = [point()]
    atoms += [sphere(k) for k in range(max_sphere + 1)]
    atoms += [surface(g) for g in range(max_genus + 1)]
    atoms += [lens(p, q) for p in range(2, max_lens_p + 1) for q in range(1, p) if gcd(p, q) == 1]
    entries = list(atoms)
    for i, a in enumerate(atoms):
        for b in atoms[i:]:
            if a.dim + b.dim <= product_dim_cap:
                entries.append(product(a, b))
    sphere_dims = range(1, max_wedge_dim + 1)
    for size in range(1, max_wedge_spheres + 1):
        for dims in combinations_with_replacement(sphere_dims, size):
            entries.append(make_bouquet([sphere(k) for k in dims]))
    return entries
