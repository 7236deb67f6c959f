import itertools

import pytest
from hypothesis import given, settings, strategies as st

from slicerank.setsys import (
    BINARY,
    MOD,
    DVector,
    EncodedFamily,
    Family,
    FamilyFormatError,
    SubsetVector,
    find_progression,
    find_sunflower,
    is_capset,
    is_sunflower,
    is_sunflower_free,
    layer_extract,
    layer_split,
    pair_encode,
    parse_family,
    triple_is_sunflower,
)


def sv(*coords):
    return SubsetVector.from_coords(coords)


def dv(D, *coords):
    return DVector(len(coords), D, tuple(coords))


def binary_family(*coord_rows):
    return Family.of([sv(*row) for row in coord_rows])


def mod_family(D, *coord_rows):
    return Family.of([dv(D, *row) for row in coord_rows])


# --- vectors and families -----------------------------------------------------


def test_subset_vector_basics():
    v = SubsetVector.from_support(4, [1, 3])
    assert v.coords() == (1, 0, 1, 0)
    assert v.weight == 2
    assert v.support() == (1, 3)
    assert v.to_line() == "1010"
    assert v.intersection(SubsetVector.from_support(4, [3, 4])).support() == (3,)


def test_vector_validation():
    with pytest.raises(ValueError):
        SubsetVector(2, 4)
    with pytest.raises(ValueError):
        DVector(2, 3, (0, 3))
    with pytest.raises(ValueError):
        DVector(2, 1, (0, 0))


def test_family_rejects_duplicates_and_mixtures():
    with pytest.raises(ValueError):
        Family.of([sv(1, 0), sv(1, 0)])
    with pytest.raises(ValueError):
        Family(BINARY, 2, None, (sv(1, 0), sv(1, 0, 0)))
    with pytest.raises(ValueError):
        Family(MOD, 1, 3, (dv(3, 0), dv(4, 1)))


def test_family_members_sorted():
    f = binary_family((1, 1), (0, 1), (1, 0))
    assert [m.coords() for m in f] == [(0, 1), (1, 0), (1, 1)]


# --- text format ----------------------------------------------------------------


def test_parse_binary_family():
    f = parse_family("# a comment\n10\n01\n\n11  # trailing\n")
    assert f.setting == BINARY and f.n == 2
    assert [m.to_line() for m in f] == ["01", "10", "11"]
    assert f.to_text() == "01\n10\n11\n"


def test_parse_mod_family_infers_d():
    f = parse_family("0,1\n2,0\n")
    assert f.setting == MOD and f.D == 3 and f.n == 2
    g = parse_family("0,1\n", D=5)
    assert g.D == 5


def test_parse_round_trip():
    f = mod_family(4, (0, 3), (1, 2))
    assert parse_family(f.to_text(), D=4).members == f.members


@given(st.integers(1, 6), st.data())
def test_text_round_trip_random_binary_families(n, data):
    bits = data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=8, unique=True))
    fam = Family.of([SubsetVector(n, b) for b in bits], n=n)
    assert parse_family(fam.to_text(), n=n).members == fam.members


@given(st.integers(3, 6), st.integers(1, 4), st.data())
def test_text_round_trip_random_mod_families(D, n, data):
    rows = data.draw(
        st.lists(st.tuples(*[st.integers(0, D - 1)] * n), max_size=8, unique=True)
    )
    fam = Family.of([DVector(n, D, t) for t in rows], n=n, D=D)
    assert parse_family(fam.to_text(), D=D, n=n).members == fam.members


def test_parse_errors_carry_line_numbers():
    with pytest.raises(FamilyFormatError, match="line 2"):
        parse_family("10\n1a\n")
    with pytest.raises(FamilyFormatError, match="line 1"):
        parse_family("2,1\n", D=2)


# --- sunflower predicates -------------------------------------------------------


def test_is_sunflower_examples():
    # pairwise disjoint singletons: core is empty
    assert is_sunflower([SubsetVector.from_support(3, [i]) for i in (1, 2, 3)])
    # common core {1} with disjoint petals
    assert is_sunflower(
        [SubsetVector.from_support(4, [1, k]) for k in (2, 3, 4)]
    )
    # {1} cap {2} is empty but {1} cap {1,2} is {1}
    assert not is_sunflower(
        [
            SubsetVector.from_support(2, [1]),
            SubsetVector.from_support(2, [2]),
            SubsetVector.from_support(2, [1, 2]),
        ]
    )


def test_two_sets_always_form_a_sunflower():
    # k=2: the single pairwise intersection is trivially the common core
    assert is_sunflower([sv(1, 0), sv(1, 1)])
    assert is_sunflower([sv(0, 0), sv(1, 1)])


def test_is_sunflower_validation():
    with pytest.raises(ValueError):
        is_sunflower([sv(1, 0)])
    with pytest.raises(ValueError):
        is_sunflower([sv(1, 0), sv(1, 0)])
    with pytest.raises(ValueError):
        is_sunflower([sv(1, 0), sv(1, 0, 0)])


def test_triple_test_binary_examples():
    assert triple_is_sunflower(sv(0, 0), sv(1, 0), sv(0, 1))
    with pytest.raises(ValueError):
        triple_is_sunflower(sv(1, 0), sv(1, 0), sv(0, 1))


def test_triple_test_mod_examples():
    assert triple_is_sunflower(dv(3, 0), dv(3, 1), dv(3, 2))
    assert triple_is_sunflower(dv(3, 0, 0), dv(3, 0, 1), dv(3, 0, 2))
    assert not triple_is_sunflower(dv(3, 0, 0), dv(3, 0, 1), dv(3, 1, 2))


def test_triple_test_agrees_with_set_definition_exhaustively():
    # the pairwise-intersection and no-{0,1,1}-coordinate characterizations
    # agree on every distinct triple for n <= 6
    for n in range(1, 7):
        vectors = [SubsetVector(n, b) for b in range(1 << n)]
        for x, y, z in itertools.combinations(vectors, 3):
            assert triple_is_sunflower(x, y, z) == is_sunflower([x, y, z])


@st.composite
def mod_triples(draw):
    n = draw(st.integers(1, 6))
    D = draw(st.integers(3, 6))
    pts = st.tuples(*[st.integers(0, D - 1)] * n)
    x = draw(pts)
    y = draw(pts.filter(lambda t: t != x))
    z = draw(pts.filter(lambda t: t not in (x, y)))
    return D, n, x, y, z


@given(mod_triples(), st.randoms(use_true_random=False))
def test_triple_test_invariance(triple, rng):
    D, n, x, y, z = triple
    base = triple_is_sunflower(dv(D, *x), dv(D, *y), dv(D, *z))
    coord_perm = list(range(n))
    rng.shuffle(coord_perm)
    value_perms = []
    for _ in range(n):
        p = list(range(D))
        rng.shuffle(p)
        value_perms.append(p)

    def apply(t):
        return tuple(value_perms[i][t[coord_perm[i]]] for i in range(n))

    assert base == triple_is_sunflower(dv(D, *apply(x)), dv(D, *apply(y)), dv(D, *apply(z)))


def test_find_sunflower_examples():
    full = binary_family((0, 0), (1, 0), (0, 1), (1, 1))
    witness = find_sunflower(full)
    assert witness is not None
    assert [m.coords() for m in witness] == [(0, 0), (0, 1), (1, 0)]
    assert is_sunflower_free(binary_family((1, 0), (0, 1), (1, 1)))
    assert find_sunflower(mod_family(3, (0,), (1,), (2,))) is not None


def test_find_sunflower_agrees_with_set_predicate():
    # on binary families the family-level check must agree with the
    # pairwise-intersection definition triple by triple
    fam = binary_family((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 1, 1))
    byset = any(
        is_sunflower(list(t)) for t in itertools.combinations(fam.members, 3)
    )
    assert byset == (not is_sunflower_free(fam))


def test_layer_safety_exhaustive():
    # distinct constant-weight triples with no exactly-two-ones coordinate
    # are sunflowers, for all n <= 5 (so sunflower-free layers are diagonal)
    for n in range(1, 6):
        by_weight = {}
        for b in range(1 << n):
            by_weight.setdefault(SubsetVector(n, b).weight, []).append(SubsetVector(n, b))
        for vectors in by_weight.values():
            for x, y, z in itertools.combinations(vectors, 3):
                if triple_is_sunflower(x, y, z):
                    assert is_sunflower([x, y, z])


# --- layers ---------------------------------------------------------------------


def test_layer_split_examples():
    f = binary_family((0, 0), (1, 0), (0, 1), (1, 1))
    layers = layer_split(f)
    assert sorted(layers) == [0, 1, 2]
    assert len(layers[1]) == 2
    assert layer_split(Family(BINARY, 2, None, ())) == {}
    g = binary_family((1, 1, 0), (1, 0, 1))
    assert list(layer_split(g)) == [2]


def test_layer_split_partitions():
    f = binary_family((1, 1, 0), (0, 1, 1), (1, 1, 1), (0, 0, 0))
    layers = layer_split(f)
    got = sorted(m.coords() for fam in layers.values() for m in fam)
    assert got == sorted(m.coords() for m in f)
    for w, fam in layers.items():
        assert all(m.weight == w for m in fam)


# --- capsets --------------------------------------------------------------------


def test_capset_examples():
    assert not is_capset(mod_family(3, (0,), (1,), (2,)))
    assert is_capset(mod_family(3, (0,), (1,)))
    assert is_capset(mod_family(3, (0, 0), (0, 1), (1, 0), (1, 1)))
    with pytest.raises(ValueError):
        is_capset(mod_family(4, (0,), (1,)))


def test_capset_equals_mod3_sunflower_free():
    # for D=3 a distinct triple is a sunflower iff it is a progression,
    # so the two freeness notions coincide; spot-check exhaustively at n=2
    pts = [dv(3, a, b) for a in range(3) for b in range(3)]
    for members in itertools.combinations(pts, 4):
        fam = Family.of(members)
        assert is_capset(fam) == is_sunflower_free(fam)


def test_find_progression_witness_is_least():
    fam = mod_family(3, (0, 0), (1, 1), (2, 2), (0, 1))
    w = find_progression(fam)
    assert [m.coords for m in w] == [(0, 0), (1, 1), (2, 2)]


# --- pair encoding ---------------------------------------------------------------


def test_pair_encode_displayed_values():
    assert pair_encode(binary_family((1, 0, 1, 1))).members == ((1, 3),)
    assert pair_encode(binary_family((0, 1, 0, 0))).members == ((2, 0),)


def test_pair_encode_round_trip():
    f = binary_family((1, 0, 1, 1), (0, 1, 0, 0), (1, 1, 1, 1))
    assert pair_encode(f).decode().members == f.members


def test_pair_encode_rejects_odd_dimension():
    with pytest.raises(ValueError):
        pair_encode(binary_family((1, 0, 1)))


def test_layer_extract_example():
    enc = EncodedFamily(2, ((1, 3), (2, 3)))
    fam = layer_extract(enc, (0, 1))
    assert fam.setting == MOD and fam.D == 3 and fam.n == 1
    assert [m.coords for m in fam] == [(1,), (2,)]


def test_layer_extract_dimension_check():
    enc = EncodedFamily(2, ((1, 3),))
    with pytest.raises(ValueError):
        layer_extract(enc, (0, 1, 0))


def test_layer_extract_full_support():
    enc = EncodedFamily(1, ((3,), (0,)))
    fam = layer_extract(enc, (1,))
    assert fam.n == 0 and len(fam) == 1


@st.composite
def greedy_free_binary_families(draw):
    n = draw(st.integers(2, 10).filter(lambda k: k % 2 == 0))
    pool = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=24, unique=True))
    members: list[SubsetVector] = []
    for bits in pool:
        v = SubsetVector(n, bits)
        if any(
            triple_is_sunflower(a, b, v) for a, b in itertools.combinations(members, 2)
        ):
            continue
        members.append(v)
    return Family(BINARY, n, None, tuple(members))


@settings(max_examples=40, deadline=None)
@given(greedy_free_binary_families())
def test_extracted_layers_of_free_families_are_capsets(fam):
    enc = pair_encode(fam)
    supports = {tuple(1 if s == 3 else 0 for s in m) for m in enc.members}
    for x in supports:
        assert is_capset(layer_extract(enc, x))
