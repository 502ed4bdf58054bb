import pytest

from rigidcalc import (
    INFINITY,
    CycNumber,
    ExactMatrix,
    JordanType,
    MultiplicityFunction,
    certify_regular,
    from_multiplicity_function,
    hypergeometric_tuple,
    is_absolutely_irreducible,
    is_somewhere_maximal,
    rigidity_index,
)
from rigidcalc.errors import DimensionMismatch, EmptyParameters, EmptySupport, NotRootOfUnity


def pseudo_reflection_rank(t):
    a1 = t.monodromy_at(1)
    return (a1 - ExactMatrix.identity(t.rank, order=t.order)).rank()


def random_multiplicity(rng, max_rank=6):
    order = rng.choice([2, 3, 4, 6, 8, 12])
    total = rng.randint(1, max_rank)
    keys = [CycNumber.zeta(order, k) for k in range(1, order)]
    rng.shuffle(keys)
    chosen = keys[: rng.randint(1, min(3, len(keys), total))]
    counts = [1] * len(chosen)
    for _ in range(total - len(chosen)):
        counts[rng.randrange(len(chosen))] += 1
    return MultiplicityFunction.of(list(zip(chosen, counts))), order


class TestHypergeometricTuple:
    def test_rank_one(self):
        t = hypergeometric_tuple([1], [-1], 2)
        assert t.rank == 1
        assert t.jordan_at("0") == JordanType.from_blocks([(-1, 1)])
        assert t.jordan_at("1") == JordanType.from_blocks([(-1, 1)])
        assert t.jordan_at("inf") == JordanType.from_blocks([(1, 1)])

    def test_rank_two_with_cube_roots(self):
        z = CycNumber.zeta(3)
        t = hypergeometric_tuple([1, 1], [z, z * z], 3)
        assert t.rank == 2
        assert t.jordan_at("inf") == JordanType.from_blocks([(1, 2)])
        assert t.jordan_at("0") == JordanType.from_blocks([(z.inverse(), 1), ((z * z).inverse(), 1)])
        assert pseudo_reflection_rank(t) == 1

    def test_companion_convention(self):
        z = CycNumber.zeta(3)
        t = hypergeometric_tuple([1, 1], [z, z * z], 3)
        # A = companion of (T-1)^2 = T^2 - 2T + 1, B = companion of T^2+T+1
        a = t.at_infinity  # conjugate of A: same Jordan data
        assert a.charpoly() == ExactMatrix.from_rows([[0, -1], [1, 2]]).charpoly()
        assert t.monodromy_at(0).inverse().charpoly() == ExactMatrix.from_rows(
            [[0, -1], [1, -1]], order=3
        ).charpoly()

    def test_intersecting_parameters_reducible(self):
        t = hypergeometric_tuple([1, -1], [1, CycNumber.zeta(4)], 4)
        assert not is_absolutely_irreducible(t)

    def test_empty_parameters(self):
        with pytest.raises(EmptyParameters):
            hypergeometric_tuple([], [], 2)

    def test_unequal_length(self):
        with pytest.raises(DimensionMismatch):
            hypergeometric_tuple([1], [1, -1], 2)

    def test_not_root_of_unity(self):
        with pytest.raises(NotRootOfUnity):
            hypergeometric_tuple([2], [-1], 2)


class TestMultiplicityFunction:
    def test_single_key(self):
        t = from_multiplicity_function({CycNumber.from_rational(-1): 3}, 2)
        assert t.rank == 3
        assert t.jordan_at("0") == JordanType.from_blocks([(-1, 3)])
        assert t.jordan_at("inf") == JordanType.from_blocks([(1, 3)])

    def test_rank_adds_up(self):
        z = CycNumber.zeta(3)
        t = from_multiplicity_function({z: 1, z * z: 1}, 3)
        assert t.rank == 2

    def test_empty_support(self):
        with pytest.raises(EmptySupport):
            from_multiplicity_function(MultiplicityFunction(()), 2)

    def test_key_validation(self):
        with pytest.raises(ValueError):
            MultiplicityFunction.of({CycNumber.one(): 1})
        with pytest.raises(NotRootOfUnity):
            MultiplicityFunction.of({CycNumber.from_rational(2): 1})
        with pytest.raises(ValueError):
            MultiplicityFunction.of([(CycNumber.from_rational(-1), 0)])

    def test_repeated_key_rejected(self):
        minus_one_a = CycNumber.from_rational(-1, 2)
        minus_one_b = CycNumber.from_raw([0, 0, 1, 0], 4)
        with pytest.raises(ValueError):
            MultiplicityFunction.of([(minus_one_a, 1), (minus_one_b, 2)])


class TestRandomCorpus:
    def test_rank_formula(self, rng):
        for _ in range(50):
            m, order = random_multiplicity(rng)
            t = from_multiplicity_function(m, order)
            assert t.rank == m.rank
            assert pseudo_reflection_rank(t) <= 1
            assert is_somewhere_maximal(t) == INFINITY
            assert str(certify_regular(t)) == "RegularViaLemma(inf)"
            det = (
                t.at_infinity.det()
                * t.monodromy_at(0).det()
                * t.monodromy_at(1).det()
            )
            assert det.is_one()
            # single unipotent block at infinity; one block per key at 0
            assert t.jordan_at("inf") == JordanType.from_blocks([(1, t.rank)])
            expected_zero = JordanType.from_blocks(
                [(key.inverse(), mult) for key, mult in m.items()]
            )
            assert t.jordan_at("0") == expected_zero

    def test_disjoint_parameters_rigid_irreducible(self, rng):
        for _ in range(8):
            order = rng.choice([3, 4, 6])
            n = rng.randint(2, 3)
            exponents = list(range(order))
            rng.shuffle(exponents)
            split = rng.randint(1, order - 1)
            a_pool, b_pool = exponents[:split], exponents[split:]
            a_params = [CycNumber.zeta(order, rng.choice(a_pool)) for _ in range(n)]
            b_params = [CycNumber.zeta(order, rng.choice(b_pool)) for _ in range(n)]
            t = hypergeometric_tuple(a_params, b_params, order)
            assert is_absolutely_irreducible(t)
            assert rigidity_index(t) == 2
            assert pseudo_reflection_rank(t) <= 1
