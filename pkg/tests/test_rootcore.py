from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import CARTAN, GRAM, HIGHEST_ROOT, POSITIVE_ROOTS, WEYL_ORDER, orbit_roots, weyl_order
from reldecay.rootcore import (
    RootSystemError,
    apply_weyl,
    build_root_system,
    check_closed,
    classify,
    enumerate_weyl,
    full_subsystem,
    highest_root,
    is_positive,
    make_subsystem,
    orthogonal_subsystem,
    pairing,
    reflect,
    subsystem_highest_root,
    weyl_element,
)


F4_PLAIN = build_root_system(CARTAN["F4"])
F4_PLAIN_WEYL = enumerate_weyl(F4_PLAIN)


@pytest.fixture(scope="module")
def f4():
    return build_root_system(CARTAN["F4"], {4: 1, 2: 2})


@pytest.fixture(scope="module")
def f4_weyl(f4):
    return enumerate_weyl(f4)


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "F4"])
def test_positive_roots_match_hand_table(name):
    spec = build_root_system(CARTAN[name])
    assert set(spec.positive_roots) == POSITIVE_ROOTS[name]
    assert len(spec.positive_roots) == len(POSITIVE_ROOTS[name])


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "C3", "F4"])
def test_positive_roots_match_reflection_orbit(name):
    spec = build_root_system(CARTAN[name])
    assert spec.roots == orbit_roots(GRAM[name])


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "F4"])
def test_weyl_order_and_highest_root(name):
    spec = build_root_system(CARTAN[name])
    assert len(enumerate_weyl(spec)) == WEYL_ORDER[name]
    assert highest_root(spec) == HIGHEST_ROOT[name]


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
def test_weyl_order_matches_independent_closure(name):
    assert weyl_order(GRAM[name]) == WEYL_ORDER[name]


def test_pairing_is_proportional_to_hand_gram():
    for name in ["B2", "G2", "C3", "F4"]:
        spec = build_root_system(CARTAN[name])
        n = spec.rank
        ratios = {
            pairing(spec, spec.simple_root(i + 1), spec.simple_root(j + 1)) / GRAM[name][i][j]
            for i in range(n)
            for j in range(n)
            if GRAM[name][i][j]
        }
        assert len(ratios) == 1 and ratios.pop() > 0


def test_symmetrizer_and_lengths(f4):
    assert f4.symmetrizer == (2, 2, 1, 1)
    assert dict(f4.multiplicity_by_length) == {Q(4): 1, Q(2): 2}
    for i in range(4):
        for j in range(4):
            assert f4.cartan[i][j] * f4.symmetrizer[j] == f4.cartan[j][i] * f4.symmetrizer[i]


def test_generation_soundness(f4):
    pos = set(f4.positive_roots)
    assert len(pos) == len(f4.positive_roots)
    assert all(is_positive(r) for r in pos)
    for g in pos:
        for m in pos:
            s = tuple(a + b for a, b in zip(g, m))
            if s in f4.roots:
                assert s in pos


def test_rank_one():
    spec = build_root_system([[2]])
    assert spec.positive_roots == ((1,),)
    assert highest_root(spec) == (1,)


@pytest.mark.parametrize(
    "cartan, message",
    [
        ([[2, 1], [-1, 2]], "positive"),
        ([[3]], "diagonal"),
        ([[2, -1], [0, 2]], "vanish together"),
        ([[2, -2], [-2, 2]], "finite type"),  # affine A1
        ([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]], "finite type"),  # affine A2
        ([[2, -1, 0], [-2, 2, -1], [0, -2, 2]], "finite type"),
        ([[2, -1, -1], [-2, 2, -1], [-1, -1, 2]], "symmetrizable"),
        ([], "positive rank"),
    ],
)
def test_rejects_bad_cartan(cartan, message):
    with pytest.raises(RootSystemError, match=message):
        build_root_system(cartan)


def test_root_cap():
    with pytest.raises(RootSystemError, match="not of finite type"):
        build_root_system(CARTAN["F4"], root_cap=10)


def test_highest_root_requires_irreducible():
    spec = build_root_system([[2, 0], [0, 2]])
    with pytest.raises(RootSystemError):
        highest_root(spec)


def test_pairing_examples(f4):
    beta = highest_root(f4)
    assert pairing(f4, beta, beta) > 0
    assert pairing(f4, f4.simple_root(2), beta) == 0
    assert pairing(f4, f4.simple_root(1), beta) > 0


def test_highest_root_dominance(f4):
    beta = highest_root(f4)
    assert all(pairing(f4, beta, g) >= 0 for g in f4.positive_roots)


def test_apply_weyl_examples(f4):
    e = weyl_element(f4, ())
    x = (Q(1, 3), Q(-2), Q(5), Q(0))
    assert apply_weyl(f4, e, x) == x
    s1 = weyl_element(f4, (1,))
    assert apply_weyl(f4, s1, f4.simple_root(1)) == (-1, 0, 0, 0)
    beta = highest_root(f4)
    w = weyl_element(f4, (4, 2, 3, 2, 1))
    image = apply_weyl(f4, w, beta)
    assert image in f4.positive_roots and image != beta
    # w beta spans the conjugate of H1, whose delta is read off the half-density display
    assert image == (1, 1, 2, 0)


def test_word_acts_rightmost_first(f4):
    x = (Q(1), Q(2), Q(-1), Q(3))
    w = weyl_element(f4, (3, 1))
    assert apply_weyl(f4, w, x) == reflect(f4, 3, reflect(f4, 1, x))


@pytest.mark.parametrize("name, order", [("A1", 2), ("A2", 6)])
def test_enumerate_small(name, order):
    assert len(enumerate_weyl(build_root_system(CARTAN[name]))) == order


def test_enumerate_canonical_words(f4, f4_weyl):
    assert len(f4_weyl) == 1152
    assert len({w.matrix for w in f4_weyl}) == 1152
    assert f4_weyl[0].word == ()
    # longest element of F4 is -1, length 24
    assert f4_weyl[-1].matrix == tuple(tuple(-int(i == j) for j in range(4)) for i in range(4))
    assert len(f4_weyl[-1].word) == 24
    by_matrix = {w.matrix: w.word for w in f4_weyl}
    # s2 s4 = s4 s2: the lex-least reduced word starts with 2
    assert by_matrix[weyl_element(f4, (4, 2, 3, 2, 1)).matrix] == (2, 4, 3, 2, 1)
    for w in f4_weyl[:200]:
        assert weyl_element(f4, w.word).matrix == w.matrix


def test_enumerate_weyl_cap(f4):
    with pytest.raises(RootSystemError, match="cap"):
        enumerate_weyl(f4, order_cap=100)


def test_weyl_words_are_reduced(f4, f4_weyl):
    # length of w equals the number of positive roots sent negative
    for w in f4_weyl[::37]:
        flipped = sum(1 for g in f4.positive_roots if not is_positive(apply_weyl(f4, w, g)))
        assert flipped == len(w.word)


def test_pairing_and_multiplicity_are_weyl_invariant(f4, f4_weyl):
    simple = [f4.simple_root(i) for i in range(1, 5)]
    for w in f4_weyl:
        images = [apply_weyl(f4, w, a) for a in simple]
        for i in range(4):
            assert f4.multiplicity(images[i]) == f4.multiplicity(simple[i])
            for j in range(i, 4):
                assert pairing(f4, images[i], images[j]) == pairing(f4, simple[i], simple[j])


weights = st.tuples(*[st.fractions(min_value=-50, max_value=50, max_denominator=12)] * 4)


@given(weights, st.integers(1, 4))
def test_reflection_is_an_involution(x, i):
    assert reflect(F4_PLAIN, i, reflect(F4_PLAIN, i, x)) == x


@settings(max_examples=50)
@given(weights, weights, st.integers(0, 1151))
def test_pairing_invariance_on_weights(x, y, k):
    spec = F4_PLAIN
    w = F4_PLAIN_WEYL[k]
    assert pairing(spec, apply_weyl(spec, w, x), apply_weyl(spec, w, y)) == pairing(spec, x, y)
    assert pairing(spec, x, y) == pairing(spec, y, x)


def test_orthogonal_subsystem_of_highest_root(f4):
    perp = orthogonal_subsystem(f4, highest_root(f4))
    check_closed(f4, perp)
    assert len(perp.positive_part) == 9
    comps = classify(f4, perp)
    assert [str(c.dynkin) for c in comps] == ["C3"]
    assert set(comps[0].simple_roots) == {(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)}


def test_orthogonal_subsystem_empty_cases():
    a1 = build_root_system(CARTAN["A1"])
    assert len(orthogonal_subsystem(a1, (1,))) == 0
    a2 = build_root_system(CARTAN["A2"])
    perp = orthogonal_subsystem(a2, highest_root(a2))
    assert len(perp) == 0
    assert classify(a2, perp) == []


def test_classify_c3_perp_is_c2(f4):
    c3 = orthogonal_subsystem(f4, highest_root(f4))
    top = subsystem_highest_root(f4, c3)
    assert top == (0, 1, 2, 2)
    inner = orthogonal_subsystem(f4, top, within=c3)
    assert [str(c.dynkin) for c in classify(f4, inner)] == ["C2"]


def test_classify_standalone_c3():
    spec = build_root_system(CARTAN["C3"])
    perp = orthogonal_subsystem(spec, highest_root(spec))
    assert [str(c.dynkin) for c in classify(spec, perp)] == ["C2"]


@pytest.mark.parametrize(
    "cartan, expected",
    [
        (CARTAN["F4"], ["F4"]),
        (CARTAN["G2"], ["G2"]),
        (CARTAN["A2"], ["A2"]),
        ([[2, -1, 0], [-1, 2, -2], [0, -1, 2]], ["B3"]),
        ([[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]], ["D4"]),
        ([[2, 0], [0, 2]], ["A1", "A1"]),
    ],
)
def test_classify_full_systems(cartan, expected):
    spec = build_root_system(cartan)
    assert sorted(str(c.dynkin) for c in classify(spec, full_subsystem(spec))) == expected


def test_classify_e6():
    cartan = [[2 if i == j else 0 for j in range(6)] for i in range(6)]
    for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]:
        cartan[i][j] = cartan[j][i] = -1
    spec = build_root_system(cartan)
    assert len(spec.positive_roots) == 36
    assert [str(c.dynkin) for c in classify(spec, full_subsystem(spec))] == ["E6"]


def test_subsystem_closure_detected(f4):
    s = make_subsystem(f4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    with pytest.raises(RootSystemError, match="not closed"):
        check_closed(f4, s)


def test_make_subsystem_rejects_non_roots(f4):
    with pytest.raises(RootSystemError):
        make_subsystem(f4, [(5, 0, 0, 0)])
