import pytest

from sparseq import BlockLayout, bit_at, control_blocks, partner_index


class TestBitAt:
    def test_known_bits(self):
        assert bit_at(5, 1, 3) == 1  # 5 = 101
        assert bit_at(5, 2, 3) == 0
        assert bit_at(0, 3, 3) == 0

    def test_reconstruction(self):
        for n in range(1, 9):
            for k in range(1 << n):
                assert sum(bit_at(k, a, n) << (n - a) for a in range(1, n + 1)) == k

    def test_position_out_of_range(self):
        with pytest.raises(ValueError):
            bit_at(0, 0, 3)
        with pytest.raises(ValueError):
            bit_at(0, 4, 3)


class TestPartnerIndex:
    def test_flip_last_qubit(self):
        assert partner_index(0, 2, 2) == 1

    def test_pairing_matches_offset(self):
        # n=5, j=3: index 8 pairs with 12 (offset 2^(5-3) = 4)
        assert partner_index(8, 3, 5) == 12
        assert partner_index(12, 3, 5) == 8

    def test_flip_first_qubit(self):
        assert partner_index(3, 1, 2) == 1

    def test_involution_exhaustive(self):
        for n in range(1, 13):
            for j in range(1, n + 1):
                for k in range(1 << n):
                    assert partner_index(partner_index(k, j, n), j, n) == k

    def test_direction_follows_bit(self):
        for n in range(1, 9):
            for j in range(1, n + 1):
                for k in range(1 << n):
                    p = partner_index(k, j, n)
                    if bit_at(k, j, n) == 0:
                        assert p == k + (1 << (n - j))
                    else:
                        assert p == k - (1 << (n - j))


class TestControlBlocks:
    def test_first_qubit_of_two(self):
        assert control_blocks(2, 1) == [range(2, 4)]

    def test_middle_qubit(self):
        assert control_blocks(3, 2) == [range(2, 4), range(6, 8)]

    def test_last_qubit_gives_odd_indices(self):
        assert control_blocks(2, 2) == [range(1, 2), range(3, 4)]

    def test_blocks_equal_selected_bit_exhaustive(self):
        for n in range(1, 11):
            for i in range(1, n + 1):
                selected = {k for block in control_blocks(n, i) for k in block}
                assert selected == {k for k in range(1 << n) if bit_at(k, i, n) == 1}

    def test_total_length_is_half_the_basis(self):
        for n in range(1, 11):
            for i in range(1, n + 1):
                assert sum(len(b) for b in control_blocks(n, i)) == 1 << (n - 1)

    def test_position_out_of_range(self):
        with pytest.raises(ValueError):
            control_blocks(3, 0)


class TestBlockLayout:
    def test_derived_sizes(self):
        layout = BlockLayout(5, 2, 4)
        assert layout.block == 8
        assert layout.stride == 2
        assert layout.pair_span == 4
        assert layout.sub_blocks == 2
        assert layout.block << layout.i == 1 << layout.n
        assert layout.stride << layout.j == 1 << layout.n

    def test_cross_for_control_after_target(self):
        layout = BlockLayout(5, 4, 2)
        assert layout.cross == 4
        with pytest.raises(ValueError):
            _ = layout.sub_blocks

    def test_sub_blocks_only_for_control_before_target(self):
        with pytest.raises(ValueError):
            _ = BlockLayout(4, 3, 1).sub_blocks

    def test_equal_positions_rejected(self):
        with pytest.raises(ValueError):
            BlockLayout(3, 2, 2)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            BlockLayout(3, 0, 2)
