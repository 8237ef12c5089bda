import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from banzhaf.games import (
    AssociationMatrix,
    InvalidGameError,
    VotingGame,
    coalition_members,
    coalition_of,
    coalition_size,
    full_coalition,
    is_critical_assoc,
    is_critical_classical,
    is_winning,
    persuasion_load,
    persuasion_loads,
    single_quota_game,
    validate_coalition,
)


def game_321():
    return single_quota_game([3, 2, 1], 4)


class TestConstruction:
    def test_valid_game(self):
        g = game_321()
        assert g.num_players == 3
        assert g.num_dimensions == 1
        assert g.player_ids == ("p1", "p2", "p3")
        assert g.weights == ((3.0,), (2.0,), (1.0,))

    def test_negative_weight_rejected(self):
        with pytest.raises(InvalidGameError, match="negative"):
            single_quota_game([3, -1], 2)

    def test_nonpositive_quota_rejected(self):
        with pytest.raises(InvalidGameError, match="positive"):
            single_quota_game([1, 2], 0)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(InvalidGameError, match="expected 2 entries"):
            VotingGame(player_ids=("a", "b"), weights=((1.0, 2.0), (1.0,)), quotas=(1.0, 1.0))

    def test_duplicate_ids_rejected(self):
        with pytest.raises(InvalidGameError, match="unique"):
            single_quota_game([1, 1], 1, player_ids=("a", "a"))

    def test_empty_game_rejected(self):
        with pytest.raises(InvalidGameError):
            VotingGame(player_ids=(), weights=(), quotas=(1.0,))

    def test_association_size_checked(self):
        with pytest.raises(InvalidGameError, match="players"):
            single_quota_game([1, 2, 3], 3, association=AssociationMatrix.identity(2))

    def test_nonfinite_weight_rejected(self):
        with pytest.raises(InvalidGameError, match="finite"):
            single_quota_game([1, float("nan")], 1)

    def test_player_index_lookup(self):
        g = game_321()
        assert g.player_index("p2") == 1
        assert g.player_index(0) == 0
        with pytest.raises(InvalidGameError):
            g.player_index("nope")
        with pytest.raises(InvalidGameError):
            g.player_index(7)


class TestAssociationMatrix:
    def test_identity(self):
        phi = AssociationMatrix.identity(3)
        assert phi.entries == ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))

    def test_diagonal_must_be_one(self):
        with pytest.raises(InvalidGameError, match="diagonal"):
            AssociationMatrix(((0.9, 0.0), (0.0, 1.0)))

    def test_entries_bounded(self):
        with pytest.raises(InvalidGameError, match="outside"):
            AssociationMatrix(((1.0, 1.5), (0.0, 1.0)))

    def test_must_be_square(self):
        with pytest.raises(InvalidGameError):
            AssociationMatrix(((1.0, 0.0),))

    def test_extreme_entries_allowed(self):
        phi = AssociationMatrix(((1.0, -1.0), (1.0, 1.0)))
        assert phi.entries[0][1] == -1.0


class TestCoalitions:
    def test_round_trip(self):
        c = coalition_of([0, 2, 5])
        assert list(coalition_members(c)) == [0, 2, 5]
        assert coalition_size(c) == 3

    def test_full(self):
        assert full_coalition(3) == 0b111

    def test_out_of_range_bits_rejected(self):
        g = game_321()
        with pytest.raises(InvalidGameError, match="bits outside"):
            validate_coalition(g, 1 << 3)
        with pytest.raises(InvalidGameError):
            validate_coalition(g, -1)


class TestWinning:
    def test_boundary_is_winning(self):
        g = game_321()
        assert is_winning(g, coalition_of([0, 2]))  # weight 4 == quota
        assert not is_winning(g, coalition_of([1, 2]))  # weight 3

    def test_strict_convention(self):
        g = game_321()
        assert not is_winning(g, coalition_of([0, 2]), strict=True)
        assert is_winning(g, coalition_of([0, 1]), strict=True)  # weight 5

    def test_multi_quota_all_dimensions(self):
        g = VotingGame(
            player_ids=("a", "b"),
            weights=((2.0, 1.0), (1.0, 3.0)),
            quotas=(2.0, 3.0),
        )
        assert not is_winning(g, 0b01)  # fails second quota
        assert not is_winning(g, 0b10)  # fails first quota
        assert is_winning(g, 0b11)

    def test_empty_coalition_loses(self):
        assert not is_winning(game_321(), 0)


class TestClassicalCriticality:
    def test_spec_profile(self):
        g = game_321()
        # p1 swings {p1,p2}, {p1,p3}, {p1,p2,p3}
        assert is_critical_classical(g, 0, 0b011)
        assert is_critical_classical(g, 0, 0b101)
        assert is_critical_classical(g, 0, 0b111)
        # p2 and p3 swing only alongside p1
        assert is_critical_classical(g, 1, 0b011)
        assert not is_critical_classical(g, 1, 0b111)
        assert is_critical_classical(g, 2, 0b101)

    def test_losing_coalition_not_critical(self):
        assert not is_critical_classical(game_321(), 2, 0b100)

    def test_nonmember_rejected(self):
        with pytest.raises(InvalidGameError, match="not in the coalition"):
            is_critical_classical(game_321(), 0, 0b010)


class TestPersuasion:
    def test_load_and_surplus(self):
        g = single_quota_game([2, 1], 2)
        phi = AssociationMatrix(((1.0, 1.0), (0.5, 1.0)))
        p1 = persuasion_load(g, phi, "p1")
        assert p1.load == (3.0,)
        assert p1.surplus == (1.0,)
        p2 = persuasion_load(g, phi, "p2")
        assert p2.load == (2.0,)
        assert p2.surplus == (1.0,)

    def test_negative_surplus(self):
        g = single_quota_game([2, 1], 2)
        phi = AssociationMatrix(((1.0, -1.0), (0.5, 1.0)))
        p1 = persuasion_load(g, phi, "p1")
        assert p1.load == (1.0,)
        assert p1.surplus == (-1.0,)

    def test_loads_match_matrix_product(self):
        g = single_quota_game([3, 2, 1], 4)
        phi = AssociationMatrix(((1.0, 0.25, -0.5), (0.0, 1.0, 0.75), (-1.0, 0.5, 1.0)))
        loads = persuasion_loads(g, phi)
        expect = phi.matrix @ g.weight_matrix
        for i in range(3):
            assert loads[i][0] == pytest.approx(expect[i, 0], abs=1e-12)

    def test_size_mismatch_rejected(self):
        g = game_321()
        with pytest.raises(InvalidGameError):
            persuasion_loads(g, AssociationMatrix.identity(2))


class TestAssociationCriticality:
    def test_spec_example(self):
        g = single_quota_game([2, 1], 2)
        phi = AssociationMatrix(((1.0, 1.0), (0.5, 1.0)))
        # p2 pulls weight 2 out of {p1,p2}: 3 - 2 < 2
        assert is_critical_assoc(g, phi, 1, 0b11)
        assert not is_critical_classical(g, 1, 0b11)

    def test_identity_matches_classical(self):
        g = game_321()
        phi = AssociationMatrix.identity(3)
        for c in range(1, 8):
            for i in coalition_members(c):
                assert is_critical_assoc(g, phi, i, c) == is_critical_classical(g, i, c)

    def test_members_only_variant(self):
        g = single_quota_game([2, 1, 1], 2)
        phi = AssociationMatrix(((1.0, 0.0, -1.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)))
        c = 0b011  # {p1, p2}, weight 3
        # whole-game load of p1 is 2 - 1 = 1, removal leaves 2 >= q
        assert not is_critical_assoc(g, phi, 0, c)
        # restricted to members, p3's negative pull is gone: load 2, 3 - 2 < 2
        assert is_critical_assoc(g, phi, 0, c, members_only=True)

    def test_nonmember_rejected(self):
        g = single_quota_game([2, 1], 2)
        with pytest.raises(InvalidGameError, match="not in the coalition"):
            is_critical_assoc(g, AssociationMatrix.identity(2), 0, 0b10)


@st.composite
def small_games(draw):
    weights = draw(st.lists(st.integers(0, 9), min_size=1, max_size=6))
    total = sum(weights)
    quota = draw(st.integers(1, max(1, total + 1)))
    return single_quota_game(weights, quota)


class TestProperties:
    @given(small_games())
    @settings(max_examples=150, deadline=None)
    def test_dummy_never_critical(self, game):
        dummies = [i for i, row in enumerate(game.weights) if row[0] == 0.0]
        full = full_coalition(game.num_players)
        for i in dummies:
            for c in range(1, full + 1):
                if (c >> i) & 1:
                    assert not is_critical_classical(game, i, c)

    @given(small_games())
    @settings(max_examples=150, deadline=None)
    def test_criticality_implies_winning(self, game):
        for c in range(1, 1 << game.num_players):
            for i in coalition_members(c):
                if is_critical_classical(game, i, c):
                    assert is_winning(game, c)
                    assert not is_winning(game, c & ~(1 << i))

    @given(small_games())
    @settings(max_examples=100, deadline=None)
    def test_identity_reduction(self, game):
        phi = AssociationMatrix.identity(game.num_players)
        for c in range(1, 1 << game.num_players):
            for i in coalition_members(c):
                assert is_critical_assoc(game, phi, i, c) == is_critical_classical(game, i, c)
