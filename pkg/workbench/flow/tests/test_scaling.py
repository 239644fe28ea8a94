import pytest

from flow.scaling import vk_scaling_probe


class TestScalingProbe:
    """Test E / |Q|^(3/4) normalization"""

    def test_normalizes_by_charge(self):
        table = vk_scaling_probe([(1, 2.0), (16, 16.0), (-16, 16.0)])
        assert [e.normalized for e in table.entries] == pytest.approx([2.0, 2.0, 2.0])
        assert table.spread == pytest.approx(1.0)

    def test_spread(self):
        table = vk_scaling_probe([(1, 1.0), (1, 1.5)])
        assert table.spread == pytest.approx(1.5)

    @pytest.mark.parametrize("results", [[], [(0, 1.0)], [(1, 0.0)], [(2, -1.0)]])
    def test_rejects_invalid(self, results):
        with pytest.raises(ValueError):
            vk_scaling_probe(results)
