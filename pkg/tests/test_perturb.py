import pytest

from qbayes.errors import UsageError
from qbayes.perturb import perturb_experiment, render_report


class TestPerturbExperiment:
    def test_zero_noise_identical_to_baseline(self, ids_net):
        report = perturb_experiment(ids_net, 0.0, 5, seed=7)
        assert report.agreement_fraction == 1.0
        for t in report.trials:
            assert t.top3 == report.baseline_top3
            assert t.mass == pytest.approx(report.min_mass, abs=0)

    def test_seeded_determinism(self, ids_net):
        a = perturb_experiment(ids_net, 0.05, 10, seed=123)
        b = perturb_experiment(ids_net, 0.05, 10, seed=123)
        assert render_report(a) == render_report(b)

    def test_different_seeds_differ(self, ids_net):
        a = perturb_experiment(ids_net, 0.1, 10, seed=1)
        b = perturb_experiment(ids_net, 0.1, 10, seed=2)
        assert render_report(a) != render_report(b)

    def test_mass_stats_consistent(self, ids_net):
        report = perturb_experiment(ids_net, 0.05, 20, seed=9)
        masses = [t.mass for t in report.trials]
        assert report.min_mass == min(masses)
        assert report.mean_mass == pytest.approx(sum(masses) / len(masses), abs=1e-15)

    @pytest.mark.parametrize("noise,trials", [(-0.01, 5), (0.25, 5), (0.05, 0)])
    def test_parameter_ranges(self, ids_net, noise, trials):
        with pytest.raises(UsageError):
            perturb_experiment(ids_net, noise, trials, seed=0)

    def test_report_shape(self, ids_net):
        report = perturb_experiment(ids_net, 0.02, 3, seed=5)
        text = render_report(report)
        lines = text.splitlines()
        assert lines[0].startswith("baseline_top3=")
        assert len([l for l in lines if l.startswith("trial=")]) == 3
        assert lines[-3].startswith("agreement_fraction=")
        assert lines[-2].startswith("min_top3_mass=")
        assert lines[-1].startswith("mean_top3_mass=")
