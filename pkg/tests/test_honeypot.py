import random

import pytest

from honeysim import CampaignSettings, HoneypotConfig, PopulationSpec, load_figure2_matrix, run_campaign
from honeysim.corpora import data_path
from honeysim.honeypot import (
    DEFAULT_CONSUME_BUDGET,
    DEFAULT_GENERATE_BUDGET,
    FixtureIntegrityError,
    build_honeypot,
    parse_honeypot_list,
)
from honeysim.platform import InteractionEvent, Platform, RateLimitPolicy
from honeysim.population import with_overrides
from honeysim.techniques import ConsumptionContext, ContentSources

# Generation partners of each consumption technique, read off the combination
# matrix row by row; every consumption technique also runs alone.
PARTNERS = {
    1: (13, 17, 21, 37), 2: (13, 22, 23), 3: (13, 14, 28, 33, 35), 4: (19, 28), 5: (16, 23, 29),
    6: (), 7: (), 8: (24,), 9: (27, 31, 32, 34), 10: (18, 25, 27, 34), 11: (), 12: (26, 27, 28),
}
FIGURE2 = {(c,) for c in PARTNERS} | {(c, g) for c, gs in PARTNERS.items() for g in gs}

SHORT = CampaignSettings(ticks=10, warmup_ticks=48)


def test_figure2_matches_matrix():
    configs = load_figure2_matrix()
    assert len(configs) == 41 == len(FIGURE2)
    assert {c.techniques for c in configs} == FIGURE2
    assert [c.id for c in configs] == list(range(1, 42))
    assert all(c.techniques == (c.id,) for c in configs[:12])


def test_figure2_budgets_and_flags():
    for c in load_figure2_matrix():
        assert not c.generation_only
        for t in c.techniques:
            assert c.budget(t) == (DEFAULT_CONSUME_BUDGET if t <= 12 else DEFAULT_GENERATE_BUDGET)


@pytest.mark.parametrize("mutate, message", [
    (lambda rows: rows[:-1], "expected 41"),
    (lambda rows: rows[:-1] + [rows[-2].replace("40,", "41,", 1)], "duplicate combinations"),
    (lambda rows: rows[:-1] + ["41,13;14,ok"], "not a"),
    (lambda rows: rows[:-1] + ["41,1;99,ok"], "row 41"),
    (lambda rows: [r.replace("1,1,ok", "1,13,ok") if r.startswith("1,1,") else r for r in rows], "singletons"),
])
def test_corrupt_matrix_rejected(tmp_path, mutate, message):
    src = data_path("figure2.csv").read_text(encoding="utf-8").splitlines()
    head = [r for r in src if r.startswith("#") or r.startswith("honeypot")]
    rows = [r for r in src if r not in head]
    path = tmp_path / "bad.csv"
    path.write_text("\n".join(head + mutate(rows)) + "\n", encoding="utf-8")
    with pytest.raises(FixtureIntegrityError, match=message):
        load_figure2_matrix(path)


def test_config_validation():
    with pytest.raises(ValueError):
        HoneypotConfig(1, ())
    with pytest.raises(KeyError):
        HoneypotConfig(1, (40,))
    with pytest.raises(ValueError):
        HoneypotConfig(1, (1,), replicates=0)
    c = HoneypotConfig(5, (13, 1, 13), budgets={1: 9})
    assert c.techniques == (1, 13) and c.label == "1+13"
    assert c.budget(1) == 9 and c.budget(13) == 1
    assert HoneypotConfig(6, (25,)).generation_only


def test_parse_list():
    configs = parse_honeypot_list([[1, 13], {"id": 9, "techniques": [10], "budgets": {10: 2}, "replicates": 3}])
    assert [(c.id, c.techniques, c.replicates) for c in configs] == [(1, (1, 13), 1), (9, (10,), 3)]
    assert configs[1].budget(10) == 2


def test_generation_only_warns(caplog):
    with caplog.at_level("WARNING"):
        build_honeypot(Platform(), HoneypotConfig(3, (25,)))
    assert "little interaction" in caplog.text


def test_fresh_honeypot_account():
    p = Platform()
    hp = build_honeypot(p, HoneypotConfig(7, (1,)), replicate=1)
    u = p.users[hp.user_id]
    assert u.handle == "hp_7r2" and u.account_age_days == 0 and u.followers_count == 0
    assert hp.user_id in p.honeypots


def test_skipped_generation_is_recorded():
    p = Platform()
    hp = build_honeypot(p, HoneypotConfig(1, (13,)))
    ctx = ConsumptionContext(p, [], [])
    hp.act(p, ctx, ContentSources(), [], [], random.Random(0), {})
    assert hp.skipped and hp.skipped[0][1] == 13
    assert p.statuses == []


def test_tau1_tau13_ten_ticks():
    result = run_campaign([HoneypotConfig(1, (1, 13))], PopulationSpec(total=200), 4, SHORT)
    hp = result.honeypots[0]
    out = [e for e in result.platform.log if isinstance(e, InteractionEvent) and e.actor == hp.user_id]
    assert out and all(e.kind == "follow" and e.technique == 1 for e in out)
    assert len(out) == min(10 * DEFAULT_CONSUME_BUDGET, len(result.registry.handles))
    posted = [s for s in result.platform.statuses if s.author == hp.user_id]
    assert 0 < len(posted) <= 10
    assert all(result.status_techniques[s.id] == 13 for s in posted)
    assert all(e.technique in (1, 13) for e in result.attraction_events)


def test_suspension_when_budget_exceeds_limits():
    limits = RateLimitPolicy(max_actions_per_tick=4, max_follows_per_day=400, suspension_threshold=2)
    settings = CampaignSettings(ticks=72, warmup_ticks=24, limits=limits)
    cfg = HoneypotConfig(1, (1,), budgets={1: 8})
    result = run_campaign([cfg], PopulationSpec(total=50), 1, settings)
    uid = result.honeypots[0].user_id
    assert (24 + 24, uid) in result.suspensions  # second violation day ends at tick 48
    after = [e for e in result.platform.log
             if isinstance(e, InteractionEvent) and e.actor == uid and e.tick > 48]
    assert after == []
    assert result.platform.users[uid].suspended_tick == 48


def test_zero_reactivity_means_zero_attraction():
    quiet = with_overrides(PopulationSpec(total=200), follow_back_p=0.0, keyword_trigger_p=0.0,
                           engage_follow_p=0.0, amplify_follow_p=0.0, amplify_engage_p=0.0)
    result = run_campaign(load_figure2_matrix()[:12], quiet, 3, CampaignSettings(ticks=24, warmup_ticks=24))
    assert any(e.actor in result.honeypot_ids for e in result.honeypot_events)
    assert result.attraction_events == []


def test_attribution_conservation(small_campaign):
    result, ev = small_campaign
    techniques = {h.user_id: set(h.config.techniques) for h in result.honeypots}
    att = result.attraction_events
    assert att
    for e in att:
        assert e.technique in techniques[e.target_user]
    total = ev.techniques[-1]
    assert total.n_interactions == len(att)
    assert sum(r.n_interactions for r in ev.techniques[:-1]) == len(att)
    assert sum(r["n_interactions"] for r in ev.honeypots) == len(att)
