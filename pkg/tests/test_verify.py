import pytest

from fgred.verify import CAMPAIGNS, run_campaign


@pytest.mark.parametrize("name", sorted(CAMPAIGNS))
def test_campaign_clean(name, tmp_path, monkeypatch):
    monkeypatch.setenv("FGRED_CACHE_DIR", str(tmp_path))
    trials = 4 if name in ("color-coding", "fast-kcycle", "density") else 10
    report = run_campaign(name, trials, seed=2)
    assert report.ok, report.first_failure


def test_unknown_campaign_rejected():
    with pytest.raises(ValueError):
        run_campaign("no-such-reduction", 1, seed=0)


def test_report_fields(tmp_path, monkeypatch):
    monkeypatch.setenv("FGRED_CACHE_DIR", str(tmp_path))
    report = run_campaign("split-layer", 5, seed=4)
    assert report.trials == 5
    assert report.wall_time >= 0
    assert report.mismatches == 0 and report.first_failure is None
