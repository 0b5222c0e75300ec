"""Exact algebra of finitely generated modules over Z, Q, and prime fields.

A module is stored in invariant-factor canonical form: a free rank plus a
divisibility chain d_1 | d_2 | ... | d_t of integers >= 2 (empty over a
field).  Canonical form makes isomorphism testing structural equality and
keeps every downstream property test cheap.

The second half of the file is an exact integer linear-algebra kernel:
arbitrary-precision Smith normal form and chain-complex homology.  These
back the brute-force oracle that cross-checks every closed-form homology
formula in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ChainComplexError, UnsupportedRingError, ValidationError

# ---------------------------------------------------------------------------
# coefficient rings


def _factorint(n: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs stay desk-sized)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


@dataclass(frozen=True)
class Ring:
    """Supported coefficient rings: the integers, the rationals, or F_p.

    >>> str(prime_field(5))
    'F5'
    """

    kind: str  # "Z" | "Q" | "Fp"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValidationError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ValidationError(f"prime field needs a prime, got {self.p!r}")
        elif self.p is not None:
            raise ValidationError(f"ring {self.kind} takes no characteristic")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def __str__(self) -> str:
        return f"F{self.p}" if self.kind == "Fp" else self.kind


INTEGERS = Ring("Z")
RATIONALS = Ring("Q")


def prime_field(p: int) -> Ring:
    return Ring("Fp", p)


def parse_ring(text: str) -> Ring:
    """Parse 'Z', 'Q', or 'F<p>' (e.g. 'F7')."""
    s = text.strip()
    if s == "Z":
        return INTEGERS
    if s == "Q":
        return RATIONALS
    if s.startswith("F") and s[1:].isdigit():
        return prime_field(int(s[1:]))
    raise ValidationError(f"unknown ring {text!r}")


# ---------------------------------------------------------------------------
# finitely generated modules


def _invariant_chain(divisors) -> tuple[int, ...]:
    """Canonical divisibility chain of a direct sum of cyclic groups.

    Accepts divisors in any order (1s are dropped), splits them into prime
    powers, and recombines: the i-th largest exponents of every prime merge
    into one invariant factor.

    >>> _invariant_chain([2, 3])
    (6,)
    >>> _invariant_chain([4, 6])
    (2, 12)
    """
    buckets: dict[int, list[int]] = {}
    for d in divisors:
        if d == 1:
            continue
        for p, e in _factorint(d).items():
            buckets.setdefault(p, []).append(e)
    if not buckets:
        return ()
    for exps in buckets.values():
        exps.sort(reverse=True)
    depth = max(len(exps) for exps in buckets.values())
    chain = []
    for i in range(depth):
        f = 1
        for p, exps in buckets.items():
            if i < len(exps):
                f *= p ** exps[i]
        chain.append(f)
    chain.reverse()
    return tuple(chain)


@dataclass(frozen=True)
class FGModule:
    """A finitely generated module over a PID in canonical form.

    ``rank`` is the free rank; ``torsion`` is the invariant-factor chain
    (ascending divisibility, entries >= 2, empty over a field).
    """

    ring: Ring
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 0:
            raise ValidationError(f"rank must be a nonnegative integer, got {self.rank!r}")
        if self.torsion and self.ring.is_field:
            raise ValidationError("torsion is empty over a field")
        for d in self.torsion:
            if not isinstance(d, int) or d < 2:
                raise ValidationError(f"invariant factor must be an integer >= 2, got {d!r}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValidationError(f"torsion {self.torsion} is not a divisibility chain")

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def __str__(self) -> str:
        return module_text(self)


def zero_module(ring: Ring = INTEGERS) -> FGModule:
    return FGModule(ring, 0)


def free_module(ring: Ring, rank: int) -> FGModule:
    return FGModule(ring, rank)


def cyclic(d: int) -> FGModule:
    """Z/d as an integer module."""
    return FGModule(INTEGERS, 0, (d,))


def normalize_module(ring: Ring, rank: int, divisors) -> FGModule:
    """Build a module from a free rank and cyclic summands Z/d.

    Divisors may come in any order and need not form a chain; they are
    recombined into invariant factors.  Over a field the cyclic summands
    vanish and only the rank survives.

    >>> str(normalize_module(INTEGERS, 1, [2, 3]))
    'Z + Z/6'
    """
    if not isinstance(rank, int) or rank < 0:
        raise ValidationError(f"rank must be a nonnegative integer, got {rank!r}")
    for d in divisors:
        if not isinstance(d, int) or d < 2:
            raise ValidationError(f"divisor must be an integer >= 2, got {d!r}")
    if ring.is_field:
        return FGModule(ring, rank)
    return FGModule(ring, rank, _invariant_chain(divisors))


def _require_same_ring(a: FGModule, b: FGModule, what: str):
    if a.ring != b.ring:
        raise ValidationError(f"{what} needs matching rings, got {a.ring} and {b.ring}")


def direct_sum(a: FGModule, b: FGModule) -> FGModule:
    """Direct sum, renormalized to canonical form.

    >>> str(direct_sum(cyclic(4), cyclic(6)))
    'Z/2 + Z/12'
    """
    _require_same_ring(a, b, "direct sum")
    return FGModule(a.ring, a.rank + b.rank, _invariant_chain(a.torsion + b.torsion))


def direct_sum_many(ring: Ring, modules) -> FGModule:
    mods = list(modules)
    for m in mods:
        if m.ring != ring:
            raise ValidationError(f"direct sum needs matching rings, got {m.ring} and {ring}")
    rank = sum(m.rank for m in mods)
    divisors = [d for m in mods for d in m.torsion]
    return FGModule(ring, rank, _invariant_chain(divisors))


def _require_integers(m: FGModule, what: str):
    if m.ring != INTEGERS:
        raise UnsupportedRingError(f"{what} is implemented over the integers only, got {m.ring}")


def tensor_product(a: FGModule, b: FGModule) -> FGModule:
    """Tensor product over Z: bilinear with Z/a (x) Z/b = Z/gcd(a,b)."""
    _require_integers(a, "tensor product")
    _require_integers(b, "tensor product")
    divisors = [gcd(x, y) for x in a.torsion for y in b.torsion]
    divisors += list(a.torsion) * b.rank
    divisors += list(b.torsion) * a.rank
    return FGModule(INTEGERS, a.rank * b.rank, _invariant_chain(divisors))


def torsion_product(a: FGModule, b: FGModule) -> FGModule:
    """Tor over Z: free parts contribute nothing, Tor(Z/a, Z/b) = Z/gcd(a,b)."""
    _require_integers(a, "torsion product")
    _require_integers(b, "torsion product")
    divisors = [gcd(x, y) for x in a.torsion for y in b.torsion]
    return FGModule(INTEGERS, 0, _invariant_chain(divisors))


def is_isomorphic(a: FGModule, b: FGModule) -> bool:
    """True iff the canonical forms coincide (rings must match)."""
    _require_same_ring(a, b, "isomorphism test")
    return a.rank == b.rank and a.torsion == b.torsion


# ---------------------------------------------------------------------------
# graded modules


@dataclass(frozen=True)
class GradedModule:
    """Degree-indexed modules 0..top; everything above top is zero."""

    ring: Ring
    degrees: tuple[FGModule, ...]

    def __post_init__(self):
        if not self.degrees:
            raise ValidationError("a graded module needs at least degree 0")
        for m in self.degrees:
            if m.ring != self.ring:
                raise ValidationError("all degrees must share the graded module's ring")

    @property
    def top(self) -> int:
        return len(self.degrees) - 1

    def at(self, i: int) -> FGModule:
        if 0 <= i < len(self.degrees):
            return self.degrees[i]
        return zero_module(self.ring)

    def __str__(self) -> str:
        return graded_text(self)


def graded(ring: Ring, modules) -> GradedModule:
    return GradedModule(ring, tuple(modules))


def graded_isomorphic(x: GradedModule, y: GradedModule) -> bool:
    """Degreewise isomorphism; trailing zero degrees are immaterial."""
    if x.ring != y.ring:
        raise ValidationError(f"graded comparison needs matching rings, got {x.ring} and {y.ring}")
    for i in range(max(x.top, y.top) + 1):
        if not is_isomorphic(x.at(i), y.at(i)):
            return False
    return True


def euler_characteristic(x: GradedModule) -> int:
    """Alternating sum of free ranks; torsion never counts."""
    return sum((-1) ** i * m.rank for i, m in enumerate(x.degrees))


def kunneth(x: GradedModule, y: GradedModule) -> GradedModule:
    """Homology of a product from the homologies of the factors.

    H_i = (+)_{p+q=i} H_p (x) H_q  (+)  (+)_{p+q=i-1} Tor(H_p, H_q),
    with top degree x.top + y.top.
    """
    if x.ring != INTEGERS or y.ring != INTEGERS:
        raise ValidationError("product homology needs integer coefficients on both factors")
    out = []
    for i in range(x.top + y.top + 1):
        terms = [tensor_product(x.at(p), y.at(i - p)) for p in range(i + 1)]
        terms += [torsion_product(x.at(p), y.at(i - 1 - p)) for p in range(i)]
        out.append(direct_sum_many(INTEGERS, terms))
    return GradedModule(INTEGERS, tuple(out))


def change_coefficients(x: GradedModule, ring: Ring) -> GradedModule:
    """Universal-coefficient passage from integral homology to H_*(.; R).

    H_i(.; R) = H_i (x) R  (+)  Tor(H_{i-1}, R), specialized per ring:
    over Q torsion dies; over F_p each invariant factor divisible by p
    contributes one copy in its own degree and one in the next.
    """
    if x.ring != INTEGERS:
        raise ValidationError("coefficient change starts from integral homology")
    if ring == INTEGERS:
        return x
    if ring == RATIONALS:
        return GradedModule(ring, tuple(FGModule(ring, m.rank) for m in x.degrees))
    p = ring.p
    length = len(x.degrees)
    if any(d % p == 0 for d in x.degrees[-1].torsion):
        length += 1  # Tor of the top degree spills one degree up
    out = []
    for i in range(length):
        cur, prev = x.at(i), x.at(i - 1)
        rank = cur.rank
        rank += sum(1 for d in cur.torsion if d % p == 0)
        rank += sum(1 for d in prev.torsion if d % p == 0)
        out.append(FGModule(ring, rank))
    return GradedModule(ring, tuple(out))


def cohomology_uct(x: GradedModule) -> GradedModule:
    """Integral cohomology from integral homology.

    H^i = free part of H_i  (+)  torsion part of H_{i-1}.
    """
    if x.ring != INTEGERS:
        raise ValidationError("cohomology via universal coefficients starts from integral homology")
    length = len(x.degrees)
    if x.degrees[-1].torsion:
        length += 1  # top-degree torsion shifts one degree up
    out = [FGModule(INTEGERS, x.at(i).rank, x.at(i - 1).torsion) for i in range(length)]
    return GradedModule(INTEGERS, tuple(out))


# ---------------------------------------------------------------------------
# exact integer matrices and Smith normal form


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, arbitrary precision."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValidationError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValidationError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for v in self.entries:
            if not isinstance(v, int):
                raise ValidationError(f"matrix entries must be integers, got {v!r}")

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            for r in rows:
                if len(r) != width:
                    raise ValidationError("ragged rows")
            if cols is not None and cols != width:
                raise ValidationError("explicit column count disagrees with rows")
            cols = width
        elif cols is None:
            cols = 0
        return cls(len(rows), cols, tuple(v for r in rows for v in r))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries)

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValidationError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                out.append(sum(a[i][k] * b[k][j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))


def smith_normal_form(m: IntMatrix) -> list[int]:
    """Nonzero diagonal of the Smith normal form, d_1 | d_2 | ..., each >= 1.

    Naive pivoting on the smallest nonzero entry; all arithmetic is exact,
    so intermediate growth is harmless at this scale.

    >>> smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    [2, 4]
    """
    nr, nc = m.rows, m.cols
    a = m.to_rows()
    factors: list[int] = []
    t = 0
    while t < min(nr, nc):
        # pivot: nonzero entry of least magnitude in the trailing block
        best, pi, pj = 0, -1, -1
        for i in range(t, nr):
            for j in range(t, nc):
                v = a[i][j]
                if v != 0 and (best == 0 or abs(v) < best):
                    best, pi, pj = abs(v), i, j
        if best == 0:
            break
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] == 0:
                    continue
                q = a[i][t] // a[t][t]
                if q:
                    for j in range(t, nc):
                        a[i][j] -= q * a[t][j]
                if a[i][t]:  # remainder is smaller than the pivot: promote it
                    a[t], a[i] = a[i], a[t]
                    dirty = True
            for j in range(t + 1, nc):
                if a[t][j] == 0:
                    continue
                q = a[t][j] // a[t][t]
                if q:
                    for i in range(t, nr):
                        a[i][j] -= q * a[i][t]
                if a[t][j]:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    dirty = True
            if dirty:
                continue
            # pivot must divide the trailing block for the chain condition
            offender = None
            for i in range(t + 1, nr):
                if any(a[i][j] % a[t][t] for j in range(t + 1, nc)):
                    offender = i
                    break
            if offender is None:
                break
            for j in range(t, nc):
                a[t][j] += a[offender][j]
        factors.append(abs(a[t][t]))
        t += 1
    return factors


def matrix_rank(m: IntMatrix) -> int:
    return len(smith_normal_form(m))


def homology_of_complex(boundaries, cell_counts=None) -> GradedModule:
    """Integral homology of a chain complex given by boundary matrices.

    ``boundaries[i]`` sends chains of degree i+1 to degree i.  Ranks and
    torsion come from Smith normal forms: H_i has free rank
    dim C_i - rank d_i - rank d_{i+1} and torsion the invariant factors
    of d_{i+1} exceeding 1.

    A complex concentrated in degree 0 has no boundary matrices, so the
    cell counts must then be passed explicitly.
    """
    boundaries = list(boundaries)
    if boundaries:
        dims = [boundaries[0].rows] + [b.cols for b in boundaries]
        for i in range(1, len(boundaries)):
            if boundaries[i].rows != boundaries[i - 1].cols:
                raise ChainComplexError(
                    f"boundary {i + 1} has {boundaries[i].rows} rows but degree {i} has "
                    f"{boundaries[i - 1].cols} cells"
                )
        if cell_counts is not None and list(cell_counts) != dims:
            raise ChainComplexError(f"cell counts {list(cell_counts)} disagree with boundary shapes {dims}")
    else:
        if cell_counts is None:
            raise ValidationError("a complex without boundaries needs explicit cell counts")
        dims = list(cell_counts)
        if len(dims) != 1 or dims[0] < 0:
            raise ChainComplexError("a complex without boundaries lives in degree 0 only")
    for i in range(len(boundaries) - 1):
        if not boundaries[i].matmul(boundaries[i + 1]).is_zero:
            raise ChainComplexError(
                f"composition of boundaries {i + 2} and {i + 1} is nonzero"
            )
    snfs = [smith_normal_form(b) for b in boundaries]
    top = len(dims) - 1
    rank_of = [0] * (top + 2)  # rank_of[i] = rank of d_i
    for i in range(1, top + 1):
        rank_of[i] = len(snfs[i - 1])
    out = []
    for i in range(top + 1):
        free = dims[i] - rank_of[i] - rank_of[i + 1]
        torsion = [d for d in snfs[i] if d > 1] if i < len(snfs) else []
        out.append(FGModule(INTEGERS, free, _invariant_chain(torsion)))
    return GradedModule(INTEGERS, tuple(out))


# ---------------------------------------------------------------------------
# textual forms ("Z^r + Z/d1 + Z/d2", "Q^r", "F{p}^r")


def module_text(m: FGModule) -> str:
    parts = []
    base = str(m.ring)
    if m.rank == 1:
        parts.append(base)
    elif m.rank > 1:
        parts.append(f"{base}^{m.rank}")
    parts.extend(f"Z/{d}" for d in m.torsion)
    return " + ".join(parts) if parts else "0"


def graded_text(x: GradedModule) -> str:
    return "(" + ", ".join(module_text(m) for m in x.degrees) + ")"


def parse_module_text(text: str, ring: Ring = INTEGERS) -> FGModule:
    """Inverse of :func:`module_text` for one module.

    >>> str(parse_module_text("Z/2 + Z/4"))
    'Z/2 + Z/4'
    """
    s = text.strip()
    if s in ("0", ""):
        return zero_module(ring)
    rank = 0
    divisors = []
    base = str(ring)
    for token in s.split("+"):
        token = token.strip()
        if "/" in token:
            head, _, tail = token.partition("/")
            if head.strip() != "Z" or not tail.strip().isdigit():
                raise ValidationError(f"cannot parse torsion summand {token!r}")
            divisors.append(int(tail))
        else:
            head, _, exp = token.partition("^")
            head = head.strip()
            if head != base:
                raise ValidationError(f"summand {token!r} does not live over {base}")
            if exp:
                if not exp.strip().isdigit():
                    raise ValidationError(f"cannot parse exponent in {token!r}")
                rank += int(exp)
            else:
                rank += 1
    return normalize_module(ring, rank, divisors)


# ---------------------------------------------------------------------------
# JSON forms used by profiles, scripts, and reports


def module_to_json(m: FGModule) -> dict:
    return {"rank": m.rank, "torsion": list(m.torsion)}


def module_from_json(obj: dict, ring: Ring = INTEGERS) -> FGModule:
    if not isinstance(obj, dict) or "rank" not in obj:
        raise ValidationError(f"module JSON needs a 'rank' field, got {obj!r}")
    return normalize_module(ring, obj["rank"], obj.get("torsion", []))


def graded_to_json(x: GradedModule) -> list[dict]:
    return [module_to_json(m) for m in x.degrees]


def graded_from_json(items, ring: Ring = INTEGERS) -> GradedModule:
    mods = [module_from_json(obj, ring) for obj in items]
    if not mods:
        raise ValidationError("graded module JSON must contain at least degree 0")
    return GradedModule(ring, tuple(mods))
