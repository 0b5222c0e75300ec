"""Module algebra, Smith normal form, and chain-complex homology."""

import pytest

from helpers import determinantal_divisor, make_rng
from reeb_forge.errors import ChainComplexError, UnsupportedRingError, ValidationError
from reeb_forge.pid_algebra import (
    FGModule,
    GradedModule,
    INTEGERS,
    IntMatrix,
    RATIONALS,
    Ring,
    change_coefficients,
    cohomology_uct,
    cyclic,
    direct_sum,
    direct_sum_many,
    euler_characteristic,
    free_module,
    graded_isomorphic,
    homology_of_complex,
    is_isomorphic,
    kunneth,
    module_text,
    normalize_module,
    parse_module_text,
    parse_ring,
    prime_field,
    smith_normal_form,
    tensor_product,
    torsion_product,
    zero_module,
)

Z = INTEGERS


def diag(*entries):
    n = len(entries)
    return IntMatrix.from_rows(
        [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
    )


# ---------------------------------------------------------------------------
# rings


def test_prime_field_requires_prime():
    assert prime_field(7).p == 7
    with pytest.raises(ValidationError):
        prime_field(6)
    with pytest.raises(ValidationError):
        prime_field(1)


def test_parse_ring():
    assert parse_ring("Z") == Z
    assert parse_ring("Q") == RATIONALS
    assert parse_ring("F5") == prime_field(5)
    with pytest.raises(ValidationError):
        parse_ring("R")


# ---------------------------------------------------------------------------
# normalization


def test_normalize_crt_recombination():
    m = normalize_module(Z, 1, [2, 3])
    assert m.rank == 1 and m.torsion == (6,)
    # cross-check through the matrix route: cokernel of diag(2, 3)
    assert [d for d in smith_normal_form(diag(2, 3)) if d > 1] == [6]


def test_normalize_zero_and_chained():
    assert normalize_module(Z, 0, []).is_zero
    assert normalize_module(Z, 0, [2, 4]).torsion == (2, 4)


def test_normalize_idempotent_random():
    rng = make_rng(1)
    for _ in range(200):
        rank = rng.randint(0, 3)
        divisors = [rng.randint(2, 40) for _ in range(rng.randint(0, 5))]
        m = normalize_module(Z, rank, divisors)
        again = normalize_module(Z, m.rank, list(m.torsion))
        assert m == again


def test_normalize_field_discards_torsion():
    assert normalize_module(RATIONALS, 2, [2, 3]) == free_module(RATIONALS, 2)
    assert normalize_module(prime_field(3), 1, [9]) == free_module(prime_field(3), 1)


def test_normalize_rejects_bad_input():
    with pytest.raises(ValidationError):
        normalize_module(Z, -1, [])
    with pytest.raises(ValidationError):
        normalize_module(Z, 0, [1])
    with pytest.raises(ValidationError):
        normalize_module(Z, 0, [0])


def test_module_invariants_enforced():
    with pytest.raises(ValidationError):
        FGModule(Z, 0, (4, 2))  # not a chain
    with pytest.raises(ValidationError):
        FGModule(RATIONALS, 1, (2,))  # torsion over a field


# ---------------------------------------------------------------------------
# direct sum


def test_direct_sum_examples():
    assert direct_sum(free_module(Z, 1), cyclic(2)) == FGModule(Z, 1, (2,))
    assert direct_sum(cyclic(2), cyclic(2)).torsion == (2, 2)
    s = direct_sum(cyclic(4), cyclic(6))
    assert s.torsion == (2, 12)
    assert [d for d in smith_normal_form(diag(4, 6)) if d > 1] == [2, 12]


def test_direct_sum_ring_mismatch():
    with pytest.raises(ValidationError):
        direct_sum(free_module(Z, 1), free_module(RATIONALS, 1))


def test_direct_sum_commutative_associative_unit():
    rng = make_rng(2)
    for _ in range(100):
        mods = [
            normalize_module(Z, rng.randint(0, 2), [rng.randint(2, 30) for _ in range(rng.randint(0, 3))])
            for _ in range(3)
        ]
        a, b, c = mods
        assert is_isomorphic(direct_sum(a, b), direct_sum(b, a))
        assert is_isomorphic(direct_sum(direct_sum(a, b), c), direct_sum(a, direct_sum(b, c)))
        assert is_isomorphic(direct_sum(a, zero_module()), a)


# ---------------------------------------------------------------------------
# tensor and Tor


def test_tensor_examples():
    assert tensor_product(free_module(Z, 2), cyclic(3)) == FGModule(Z, 0, (3, 3))
    assert tensor_product(cyclic(4), cyclic(6)) == cyclic(2)
    assert tensor_product(zero_module(), FGModule(Z, 3, (2, 4))).is_zero


def test_tor_examples():
    assert torsion_product(free_module(Z, 1), cyclic(5)).is_zero
    assert torsion_product(cyclic(4), cyclic(6)) == cyclic(2)
    assert torsion_product(FGModule(Z, 0, (2, 2)), cyclic(2)) == FGModule(Z, 0, (2, 2))


def test_tor_matches_resolution_kernel():
    # Tor(Z/4, Z/6) is the kernel of multiplication by 4 on Z/6.
    kernel = [x for x in range(6) if (4 * x) % 6 == 0]
    assert len(kernel) == 2
    assert torsion_product(cyclic(4), cyclic(6)) == cyclic(2)


def test_tensor_requires_integers():
    with pytest.raises(UnsupportedRingError):
        tensor_product(free_module(RATIONALS, 1), free_module(RATIONALS, 1))
    with pytest.raises(UnsupportedRingError):
        torsion_product(free_module(prime_field(2), 1), free_module(prime_field(2), 1))


# ---------------------------------------------------------------------------
# Smith normal form


def test_snf_examples():
    assert smith_normal_form(diag(1, 1)) == [1, 1]
    assert smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]])) == [2, 4]
    assert smith_normal_form(IntMatrix.from_rows([[3]])) == [3]
    assert smith_normal_form(IntMatrix.zero(3, 2)) == []
    assert smith_normal_form(IntMatrix.zero(0, 5)) == []


def test_snf_divisibility_chain_and_minor_gcds():
    rng = make_rng(3)
    for _ in range(60):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        mat = [[rng.randint(-20, 20) for _ in range(cols)] for _ in range(rows)]
        factors = smith_normal_form(IntMatrix.from_rows(mat, cols=cols))
        for a, b in zip(factors, factors[1:]):
            assert b % a == 0
        # product of the first k invariant factors = gcd of all k x k minors
        prod = 1
        for k, d in enumerate(factors, start=1):
            prod *= d
            assert prod == determinantal_divisor(mat, k)
        if len(factors) < min(rows, cols):
            assert determinantal_divisor(mat, len(factors) + 1) == 0


def test_snf_arbitrary_precision():
    big = 10**30
    factors = smith_normal_form(diag(big, big * 3))
    assert factors == [big, big * 3]


# ---------------------------------------------------------------------------
# chain-complex homology


def test_homology_lens_complex():
    boundaries = [IntMatrix.zero(1, 1), IntMatrix.from_rows([[3]]), IntMatrix.zero(1, 1)]
    h = homology_of_complex(boundaries)
    assert [module_text(m) for m in h.degrees] == ["Z", "Z/3", "0", "Z"]


def test_homology_sphere_and_circle():
    s2 = homology_of_complex(
        [IntMatrix.zero(1, 0), IntMatrix.zero(0, 1)], cell_counts=[1, 0, 1]
    )
    assert [m.rank for m in s2.degrees] == [1, 0, 1]
    circle = homology_of_complex([IntMatrix.zero(1, 1)])
    assert [m.rank for m in circle.degrees] == [1, 1]


def test_homology_point_needs_counts():
    h = homology_of_complex([], cell_counts=[1])
    assert [module_text(m) for m in h.degrees] == ["Z"]
    with pytest.raises(ValidationError):
        homology_of_complex([])


def test_homology_rejects_bad_complexes():
    with pytest.raises(ChainComplexError):
        # d1 . d2 = [2] != 0
        homology_of_complex([IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[2]])])
    with pytest.raises(ChainComplexError):
        homology_of_complex([IntMatrix.zero(1, 2), IntMatrix.zero(1, 1)])


# ---------------------------------------------------------------------------
# Kunneth, coefficients, cohomology


def sphere_h(k):
    mods = [zero_module() for _ in range(k + 1)]
    mods[0] = free_module(Z, 1)
    mods[k] = direct_sum(mods[k], free_module(Z, 1))
    return GradedModule(Z, tuple(mods))


def lens_h(p):
    return GradedModule(Z, (free_module(Z, 1), cyclic(p), zero_module(), free_module(Z, 1)))


def test_kunneth_spheres():
    h = kunneth(sphere_h(2), sphere_h(3))
    assert [m.rank for m in h.degrees] == [1, 0, 1, 1, 0, 1]
    assert all(not m.torsion for m in h.degrees)


def test_kunneth_lens_circle():
    h = kunneth(lens_h(2), sphere_h(1))
    assert [module_text(m) for m in h.degrees] == ["Z", "Z + Z/2", "Z/2", "Z", "Z"]


def test_kunneth_unit_law():
    x = GradedModule(Z, (free_module(Z, 1), cyclic(3), free_module(Z, 2)))
    point = GradedModule(Z, (free_module(Z, 1),))
    assert kunneth(x, point) == x


def test_kunneth_symmetry_and_euler_multiplicativity():
    rng = make_rng(4)
    for _ in range(50):
        def random_graded():
            top = rng.randint(0, 3)
            return GradedModule(
                Z,
                tuple(
                    normalize_module(
                        Z, rng.randint(0, 2), [rng.randint(2, 8) for _ in range(rng.randint(0, 2))]
                    )
                    for _ in range(top + 1)
                ),
            )

        x, y = random_graded(), random_graded()
        assert graded_isomorphic(kunneth(x, y), kunneth(y, x))
        assert euler_characteristic(kunneth(x, y)) == euler_characteristic(x) * euler_characteristic(y)


def test_change_coefficients():
    x = GradedModule(Z, (free_module(Z, 1), cyclic(2), zero_module()))
    f2 = change_coefficients(x, prime_field(2))
    assert [m.rank for m in f2.degrees] == [1, 1, 1]
    assert change_coefficients(x, Z) == x
    q = change_coefficients(x, RATIONALS)
    assert [m.rank for m in q.degrees] == [1, 0, 0]
    f3 = change_coefficients(x, prime_field(3))
    assert [m.rank for m in f3.degrees] == [1, 0, 0]


def test_change_coefficients_top_torsion_spills_up():
    x = GradedModule(Z, (free_module(Z, 1), cyclic(2)))
    f2 = change_coefficients(x, prime_field(2))
    assert [m.rank for m in f2.degrees] == [1, 1, 1]


def test_cohomology_uct():
    x = GradedModule(Z, (free_module(Z, 1), zero_module(), cyclic(3), free_module(Z, 1)))
    h = cohomology_uct(x)
    assert [module_text(m) for m in h.degrees] == ["Z", "0", "0", "Z + Z/3"]
    free = GradedModule(Z, (free_module(Z, 1), free_module(Z, 2)))
    assert cohomology_uct(free) == free
    pt = GradedModule(Z, (free_module(Z, 1),))
    assert cohomology_uct(pt) == pt


def test_uct_euler_consistency():
    rng = make_rng(5)
    for _ in range(50):
        top = rng.randint(0, 4)
        mods = [
            normalize_module(Z, rng.randint(0, 2), [rng.randint(2, 9) for _ in range(rng.randint(0, 2))])
            for _ in range(top)
        ]
        mods.append(free_module(Z, rng.randint(0, 2)))  # free top degree
        x = GradedModule(Z, tuple(mods))
        h = cohomology_uct(x)
        assert euler_characteristic(h) == euler_characteristic(x)


# ---------------------------------------------------------------------------
# isomorphism, euler, text


def test_is_isomorphic():
    assert is_isomorphic(direct_sum(cyclic(2), cyclic(3)), cyclic(6))
    assert not is_isomorphic(free_module(Z, 1), cyclic(2))
    assert is_isomorphic(zero_module(), zero_module())
    with pytest.raises(ValidationError):
        is_isomorphic(free_module(Z, 1), free_module(RATIONALS, 1))


def test_euler_characteristic_examples():
    assert euler_characteristic(GradedModule(Z, (free_module(Z, 1),))) == 1
    sigma2 = GradedModule(Z, (free_module(Z, 1), free_module(Z, 4), free_module(Z, 1)))
    assert euler_characteristic(sigma2) == -2
    assert euler_characteristic(lens_h(3)) == 0


def test_module_text_round_trip():
    cases = [
        FGModule(Z, 0),
        FGModule(Z, 1),
        FGModule(Z, 3, (2, 4)),
        FGModule(Z, 0, (6,)),
    ]
    for m in cases:
        assert parse_module_text(module_text(m)) == m
    assert module_text(free_module(RATIONALS, 2)) == "Q^2"
    assert module_text(free_module(prime_field(5), 1)) == "F5"
    assert parse_module_text("Q^2", RATIONALS) == free_module(RATIONALS, 2)
    with pytest.raises(ValidationError):
        parse_module_text("Q", Z)
