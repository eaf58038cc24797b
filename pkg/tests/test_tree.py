import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import nested_trees, swap_some, trees
from mindtree.formulas import c_max, delta, delta_cfb, sigma
from mindtree.tree import (
    Tree,
    TreeStructureError,
    canonical_orientation,
    canonicalize,
    colless_index,
    isomorphic,
    make_complete_full_binary,
    make_divide_and_conquer,
    make_ladder,
    make_perfect,
    sd_label,
    shape_ids,
)


# fixed shapes on six leaves ------------------------------------------------


def test_six_leaf_shapes():
    lad = sd_label(make_ladder(6))
    assert (lad.s_count, lad.d_count) == (1, 4)
    assert colless_index(make_ladder(6)) == 10

    cfb = sd_label(make_complete_full_binary(6))
    assert (cfb.s_count, cfb.d_count) == (4, 1)
    assert colless_index(make_complete_full_binary(6)) == 2

    dac = sd_label(make_divide_and_conquer(6))
    assert (dac.s_count, dac.d_count) == (3, 2)
    assert colless_index(make_divide_and_conquer(6)) == 2


def test_canonical_strings():
    assert canonicalize(make_complete_full_binary(6)) == "(((*,*),(*,*)),(*,*))"
    assert canonicalize(make_divide_and_conquer(6)) == "(((*,*),*),((*,*),*))"
    assert canonicalize(make_ladder(4)) == "(((*,*),*),*)"
    assert canonicalize(Tree.leaf()) == "*"


def test_single_leaf():
    t = Tree.leaf()
    sd = sd_label(t)
    assert (t.n_leaves, t.n_nodes, sd.s_count, sd.d_count) == (1, 1, 0, 0)
    assert colless_index(t) == 0
    assert sd.label(0) is None


@pytest.mark.parametrize("k", range(0, 8))
def test_perfect_all_s(k):
    t = make_perfect(k)
    sd = sd_label(t)
    assert t.n_leaves == 2**k
    assert sd.d_count == 0 and sd.s_count == 2**k - 1
    assert colless_index(t) == 0


def test_perfect_rejects_negative():
    with pytest.raises(ValueError):
        make_perfect(-1)


@pytest.mark.parametrize("maker", [make_ladder, make_divide_and_conquer, make_complete_full_binary])
def test_constructors_reject_zero(maker):
    with pytest.raises(ValueError):
        maker(0)


def test_ladder_colless_is_maximum_formula():
    for n in range(1, 80):
        assert colless_index(make_ladder(n)) == c_max(n)
        assert sd_label(make_ladder(n)).s_count == (1 if n >= 2 else 0)


def test_dac_matches_sigma_delta():
    for n in range(1, 400):
        t = make_divide_and_conquer(n)
        sd = sd_label(t)
        assert sd.s_count == sigma(n)
        assert sd.d_count == delta(n)
        assert colless_index(t) == delta(n)


def test_cfb_d_count_and_colless():
    for n in range(1, 400):
        t = make_complete_full_binary(n)
        assert sd_label(t).d_count == delta_cfb(n)
        assert colless_index(t) == delta(n)


def test_cfb_last_level_filled_left_first():
    # depths of leaves read left to right never increase by more than the last level
    for n in range(1, 70):
        t = make_complete_full_binary(n)
        depth = np.zeros(t.n_nodes, dtype=int)
        for i in range(t.n_nodes - 1, -1, -1):
            if not t.is_leaf(i):
                a, b = t.children(i)
                depth[a] = depth[b] = depth[i] + 1
        leaf_depths = depth[t.leaves()].tolist()
        k = (n - 1).bit_length()
        assert set(leaf_depths) <= {k - 1, k} or n == 1
        assert leaf_depths == sorted(leaf_depths, reverse=True)


# construction and validation -----------------------------------------------


def test_nested_round_trip():
    nested = ((("a", "b"), "c"), ("d", "e"))
    t = Tree.from_nested(nested)
    assert t.to_nested() == nested
    assert t.leaf_labels() == ["a", "b", "c", "d", "e"]
    assert t.is_labeled


def test_with_leaf_labels_and_unlabeled():
    t = make_ladder(3).with_leaf_labels(["x", "y", "z"])
    assert t.to_nested() == (("x", "y"), "z")
    assert not t.unlabeled().is_labeled
    with pytest.raises(ValueError):
        make_ladder(3).with_leaf_labels(["x"])


def test_join_offsets_children():
    t = Tree.join(make_ladder(3), make_perfect(1))
    assert t.n_leaves == 5
    assert canonicalize(t) == "(((*,*),*),(*,*))"
    assert t.left[t.root] == 4 and t.right[t.root] == 7


def test_constructor_renumbers_to_postorder():
    # root first: 0 -> (1, 2), 2 -> (3, 4)
    t = Tree([1, -1, 3, -1, -1], [2, -1, 4, -1, -1], labels=[None, "a", None, "b", "c"], root=0)
    assert t.to_nested() == ("a", ("b", "c"))
    assert t.root == t.n_nodes - 1
    assert all(t.left[i] < i for i in range(t.n_nodes) if t.left[i] >= 0)


@pytest.mark.parametrize(
    "left,right,root",
    [
        ([1, -1], [-1, -1], 0),  # one child
        ([-1, -1, 0], [-1, -1, 5], 2),  # child out of range
        ([-1, 0, 0], [-1, 0, 0], 2),  # shared child
        ([-1, -1, 0, -1], [-1, -1, 1, -1], 2),  # unreachable node
        ([1, 0], [1, 0], 0),  # cycle
        ([], [], 0),
    ],
)
def test_constructor_rejects_invalid(left, right, root):
    with pytest.raises(TreeStructureError):
        Tree(left, right, root=root)


def test_from_nested_rejects_wrong_arity():
    with pytest.raises(TreeStructureError):
        Tree.from_nested((None, None, None))


def test_arrays_are_read_only():
    t = make_ladder(4)
    with pytest.raises(ValueError):
        t.left[0] = 3


def test_subtree_extracts_block():
    t = Tree.from_nested(((("a", "b"), "c"), ("d", "e")))
    left_child = t.children(t.root)[0]
    assert t.subtree(left_child).to_nested() == (("a", "b"), "c")
    assert t.subtree(t.root) == t


def test_equality_and_hash():
    a = make_divide_and_conquer(7)
    b = Tree.from_nested(a.to_nested())
    assert a == b and hash(a) == hash(b)
    assert a != make_ladder(7)


def test_repr_uses_newick():
    assert repr(make_ladder(3)) == "Tree('((,),);')"
    assert "leaves" in repr(make_ladder(40))


# properties -----------------------------------------------------------------


@given(trees())
def test_s_plus_d(t):
    sd = sd_label(t)
    assert sd.s_count + sd.d_count == t.n_leaves - 1
    internal = t.left >= 0
    assert np.array_equal(sd.is_s | sd.is_d, internal)
    assert not np.any(sd.is_s & sd.is_d)


@given(trees())
def test_colless_between_extremes(t):
    c = colless_index(t)
    assert delta(t.n_leaves) <= c <= c_max(t.n_leaves)


@given(trees())
def test_leaf_counts_sum(t):
    counts = t.leaf_counts()
    assert counts[t.root] == t.n_leaves
    for i in range(t.n_nodes):
        if not t.is_leaf(i):
            a, b = t.children(i)
            assert counts[i] == counts[a] + counts[b]


@settings(max_examples=80)
@given(nested_trees(), st.randoms(use_true_random=False))
def test_isomorphism_invariants(nested, rnd):
    a = Tree.from_nested(nested)
    b = Tree.from_nested(swap_some(nested, rnd))
    assert canonicalize(a) == canonicalize(b)
    assert isomorphic(a, b)
    assert colless_index(a) == colless_index(b)
    assert sd_label(a).s_count == sd_label(b).s_count
    assert canonical_orientation(a) == canonical_orientation(b)


@settings(max_examples=80)
@given(nested_trees(20), nested_trees(20))
def test_canonical_form_decides_isomorphism(x, y):
    a, b = Tree.from_nested(x), Tree.from_nested(y)
    assert (canonicalize(a) == canonicalize(b)) == isomorphic(a, b)


def test_shape_ids_shared_table():
    table = {}
    ids = shape_ids(make_perfect(3), table)
    # a perfect tree has one class per level
    assert len(set(ids)) == 4
    other = shape_ids(make_perfect(2), table)
    assert other[-1] in ids


def test_large_ladder_is_cheap():
    t = make_ladder(200_000)
    assert colless_index(t) == c_max(200_000)
    assert sd_label(t).d_count == 200_000 - 2


def test_isomorphic_rejects_different_sizes():
    assert not isomorphic(make_ladder(3), make_ladder(4))


def test_canonical_orientation_keeps_labels():
    t = Tree.from_nested(("a", ("b", "c")))
    c = canonical_orientation(t)
    assert sorted(c.leaf_labels()) == ["a", "b", "c"]
    assert c.to_nested() == (("b", "c"), "a")


def test_random_isomorphism_negative():
    rnd = random.Random(5)
    a = make_divide_and_conquer(12)
    b = make_complete_full_binary(12)
    assert not isomorphic(a, b)
    assert isomorphic(a, Tree.from_nested(swap_some(a.to_nested(), rnd)))
