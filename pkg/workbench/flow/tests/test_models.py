"""Test descent configuration and traces"""

import pytest
from pydantic import ValidationError

from flow.models import FlowConfig, FlowTrace, TraceRow
from topology.models import InvariantReport, Rounded


def row(iteration, total, invariants=None):
    return TraceRow(iteration, total, 0.0, total, 1.0, invariants)


class TestFlowConfig:
    """Test defaults and validation"""

    def test_defaults(self):
        cfg = FlowConfig()
        assert cfg.backtrack_factor == 0.5
        assert cfg.armijo_c == 1e-4
        assert cfg.max_iters == 2000
        assert cfg.invariant_check_every == 50

    def test_resolved_step(self):
        assert FlowConfig().resolved_step(0.5) == pytest.approx(0.025)
        assert FlowConfig(step_init=0.3).resolved_step(0.5) == 0.3

    def test_resolved_grad_tol(self):
        assert FlowConfig().resolved_grad_tol(9.0) == pytest.approx(1e-5)
        assert FlowConfig(grad_tol=1e-3).resolved_grad_tol(9.0) == 1e-3

    @pytest.mark.parametrize(
        "overrides",
        [
            {"backtrack_factor": 1.0},
            {"armijo_c": 0.0},
            {"step_init": -1.0},
            {"invariant_check_every": 0},
            {"unknown": 1},
        ],
    )
    def test_rejects_invalid(self, overrides):
        with pytest.raises(ValidationError):
            FlowConfig(**overrides)


class TestFlowTrace:
    """Test the energy ledger"""

    def test_monotone_ledger(self):
        trace = FlowTrace(rows=[row(0, 3.0)], accepted=[2.0, 2.0, 1.0])
        assert trace.is_monotone()
        assert trace.final_energy == 1.0
        assert trace.initial_energy == 3.0

    def test_increase_breaks_monotonicity(self):
        trace = FlowTrace(rows=[row(0, 3.0)], accepted=[2.0, 2.5])
        assert not trace.is_monotone()

    def test_final_energy_without_steps(self):
        assert FlowTrace(rows=[row(0, 3.0)]).final_energy == 3.0

    def test_secondary_column(self):
        report = InvariantReport(degree=Rounded.of(0.98))
        assert row(0, 1.0, report).secondary == 0.98
        assert row(0, 1.0).secondary is None
