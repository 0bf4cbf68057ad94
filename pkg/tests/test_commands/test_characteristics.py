"""Tests of the characteristics command."""
import math

import pytest


class TestCharacteristicsCommand:
    """Tests of the characteristics command."""

    def test_exponential_trajectory(self, run_report):
        """For u = y + 1 the trajectory from the origin is y(t) = e^t - 1."""
        code, report = run_report("characteristics", alpha=1.0, t_end=1.0)
        trajectory = report["payload"]["trajectories"][0]

        assert code == 0
        assert trajectory["start"] == [0.0, 0.0]
        assert trajectory["steps"] == 1000
        assert trajectory["t_final"] == 1.0
        assert trajectory["final_state"][1] == pytest.approx(math.e - 1, abs=1e-8)
        assert trajectory["u_consistency"] < 1e-8
        assert not trajectory["blown_up"]

    def test_several_starts(self, run_report, write_json):
        path = write_json(
            "input.json",
            {
                "alpha": 0.5,
                "beta": 0.2,
                "h": "exp(0.3 * x)",
                "starts": [[0, 0], [1, -1], [-0.5, 0.5]],
                "t_end": 0.5,
                "dt": 0.01,
            },
        )
        code, report = run_report("characteristics", input=path)
        trajectories = report["payload"]["trajectories"]

        assert code == 0
        assert len(trajectories) == 3
        assert all(t["u_consistency"] < 1e-6 for t in trajectories)
        assert [t["final_state"][0] for t in trajectories] == [0.0, 1.0, -0.5]

    def test_blow_up_fails(self, run_report):
        """y' = y^2 + 1 blows up before t = pi/2."""
        with pytest.warns(UserWarning):
            code, report = run_report("characteristics", beta=2.0, t_end=3.0)

        assert code == 1
        assert report["summary"] == "fail"
        assert report["payload"]["trajectories"][0]["blown_up"]

    def test_csv(self, run_command):
        code, output = run_command(
            "characteristics", alpha=1.0, t_end=1.0, dt=0.1, format="csv"
        )
        lines = output.splitlines()

        assert code == 0
        assert lines[0] == "trajectory,t,x,y,u"
        assert len(lines) == 12
        assert lines[1] == "0,0.0,0.0,0.0,1.0"

    def test_invalid_profile(self, run_command):
        assert run_command("characteristics", h="y")[0] == 2
