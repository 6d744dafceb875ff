import random
import statistics
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from honeysim import CampaignSettings, HoneypotConfig, PopulationSpec, load_figure2_matrix, run_campaign
from honeysim.platform import Platform, Status
from honeysim.population import (
    DEFAULT_ARCHETYPES,
    DEFAULT_MIX,
    Agent,
    Archetype,
    Observations,
    Stimulus,
    agent_step,
    assign_archetypes,
    generate_population,
    with_overrides,
)
from honeysim.techniques import CATALOGUE


def arch(label, **kw):
    return replace(DEFAULT_ARCHETYPES[label], **kw)


def status(sid=0, author=5, coherent=True, hashtags=(), mentions=()):
    return Status(sid, author, 0, ("x",), coherent=coherent, hashtags=tuple(hashtags), mentions=tuple(mentions))


def test_archetype_invariants():
    with pytest.raises(ValueError):
        Archetype("Cyborg", "automated")
    with pytest.raises(ValueError):
        arch("CasualHuman", follow_back_p=1.5)
    with pytest.raises(ValueError):
        Archetype("X", "robot")
    with pytest.raises(ValueError):
        arch("KeywordBot", daily_activity_rate=-1)
    assert DEFAULT_ARCHETYPES["Cyborg"].ground_truth_class == "human"
    assert abs(sum(DEFAULT_MIX.values()) - 1) < 1e-12


def test_spec_validation():
    with pytest.raises(ValueError):
        PopulationSpec(total=0)
    with pytest.raises(ValueError, match="sum"):
        PopulationSpec(mix={"CasualHuman": 0.5})
    with pytest.raises(ValueError):
        PopulationSpec(mix={"Ghost": 1.0})
    PopulationSpec(mix={"CasualHuman": 0.3, "Cyborg": 0.7 + 1e-10})


def test_all_humans():
    p = Platform()
    agents = generate_population(p, PopulationSpec(total=10, mix={"CasualHuman": 1.0}), np.random.default_rng(0))
    assert len(agents) == 10 == len(p.users)
    assert all(not a.archetype.automated for a in agents)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 500), st.lists(st.floats(0.01, 1), min_size=6, max_size=6), st.integers(0, 2**31))
def test_mix_allocation_exact(total, weights, seed):
    mix = {label: w / sum(weights) for label, w in zip(DEFAULT_MIX, weights)}
    mix[next(iter(mix))] += 1 - sum(mix.values())
    spec = PopulationSpec(total=total, mix=mix)
    slots = assign_archetypes(spec, np.random.default_rng(seed))
    assert len(slots) == total
    for label, frac in mix.items():
        assert abs(slots.count(label) - frac * total) < 1


def test_seeded_reproducibility():
    def labels(seed):
        p = Platform()
        agents = generate_population(p, PopulationSpec(total=300), np.random.default_rng(seed), ("a", "b", "c"))
        return [(a.archetype.label, a.interests, p.users[a.user_id].handle) for a in agents]

    assert labels(4) == labels(4)
    assert labels(4) != labels(5)


def test_platform_must_be_empty():
    p = Platform()
    p.create_user("someone")
    with pytest.raises(ValueError):
        generate_population(p, PopulationSpec(total=3), np.random.default_rng(0))


def test_medians_at_2000():
    p = Platform()
    generate_population(p, PopulationSpec(total=2000), np.random.default_rng(1))
    for field, target in (("followers_count", 691), ("friends_count", 1496), ("statuses_count", 1666)):
        med = statistics.median(getattr(u, field) for u in p.users)
        assert abs(med - target) <= 0.2 * target, (field, med)
    ages = [u.account_age_days for u in p.users]
    assert 29 <= min(ages) and max(ages) <= 3486


# -- behaviour -------------------------------------------------------------------


def test_followbackbot_p1_follows_back_once():
    a = Agent(1, arch("FollowBackBot", follow_back_p=1.0))
    obs = Observations(followed_by=[Stimulus(9, technique=10), Stimulus(9, technique=10)])
    acts = agent_step(a, obs, random.Random(0))
    assert [(x.kind, x.target_user, x.technique) for x in acts] == [("follow", 9, 10)]


def test_human_with_full_aversion_ignores_gibberish():
    a = Agent(1, arch("CasualHuman", gibberish_aversion_p=1.0, keyword_trigger_p=1.0, follow_back_p=1.0))
    rng = random.Random(0)
    for _ in range(500):
        obs = Observations(statuses=[Stimulus(5, status(coherent=False), 14, source_coherent=False)],
                           followed_by=[Stimulus(5, technique=14, source_coherent=False)])
        assert agent_step(a, obs, rng) == []


def test_keywordbot_retweets_every_trigger_regardless_of_coherence():
    a = Agent(1, arch("KeywordBot", keyword_trigger_p=1.0, retweet_share=1.0), interests=("x",))
    stims = [Stimulus(5, status(i, coherent=i % 2 == 0, hashtags=("x",)), 15) for i in range(5)]
    stims.append(Stimulus(5, status(9, hashtags=("other",)), 15))
    acts = agent_step(a, Observations(statuses=stims), random.Random(0))
    assert [(x.kind, x.target_status) for x in acts] == [("retweet", i) for i in range(5)]


def test_amplifier_needs_tracked_mention():
    a = Agent(1, arch("AmplifierBot", keyword_trigger_p=1.0), tracked=frozenset({7}))
    hit = Stimulus(5, status(0, mentions=(7,)), 14)
    miss = Stimulus(5, status(1, mentions=(8,)), 14)
    acts = agent_step(a, Observations(statuses=[hit, miss]), random.Random(0))
    assert [x.target_status for x in acts] == [0]


def test_cyborg_follows_back_gibberish_but_filters_content():
    a = Agent(1, arch("Cyborg", follow_back_p=1.0, gibberish_aversion_p=1.0, keyword_trigger_p=1.0,
                      attention_halflife=0.0))
    obs = Observations(followed_by=[Stimulus(5, technique=1, source_coherent=False)],
                       statuses=[Stimulus(5, status(coherent=False), 14, source_coherent=False)])
    acts = agent_step(a, obs, random.Random(0))
    assert [x.kind for x in acts] == ["follow"]


def test_attention_halflife_and_spam_filter():
    human = arch("EngagedHuman", follow_back_p=1.0, attention_halflife=2.0, spam_aversion_p=1.0)
    a = Agent(1, human)
    rng = random.Random(3)
    fresh = sum(bool(agent_step(a, Observations(followed_by=[Stimulus(5, idle=0)]), rng)) for _ in range(2000))
    stale = sum(bool(agent_step(a, Observations(followed_by=[Stimulus(5, idle=4)]), rng)) for _ in range(2000))
    assert fresh == 2000
    assert 400 < stale < 600  # 0.5 ** 2
    spam = Stimulus(5, source_rate=50)
    assert all(agent_step(a, Observations(followed_by=[spam]), rng) == [] for _ in range(200))


def test_no_self_interaction():
    a = Agent(1, arch("KeywordBot", keyword_trigger_p=1.0, follow_back_p=1.0), interests=("x",))
    obs = Observations(statuses=[Stimulus(1, status(author=1, hashtags=("x",)))], followed_by=[Stimulus(1)])
    assert agent_step(a, obs, random.Random(0)) == []


# -- campaign-level properties -------------------------------------------------------

INCOHERENT = [t for t, s in CATALOGUE.items() if not s.is_consume and not s.coherent]


@pytest.mark.parametrize("seed", [0, 1])
def test_coherence_discrimination(seed):
    spec = PopulationSpec(total=400)
    archs = {k: (replace(v, gibberish_aversion_p=1.0) if not v.automated else v)
             for k, v in spec.archetypes.items()}
    spec = replace(spec, archetypes=archs)
    configs = [HoneypotConfig(i + 1, (t,), budgets={t: 3}) for i, t in enumerate(INCOHERENT)]
    configs += [c for c in load_figure2_matrix() if set(c.techniques) & set(INCOHERENT)]
    configs = [replace(c, id=i) for i, c in enumerate(configs, 1)]
    result = run_campaign(configs, spec, seed, CampaignSettings(ticks=72, warmup_ticks=72))
    truth = {r["user_id"]: r["class"] for r in result.labels()}
    provoked = [e for e in result.attraction_events if e.technique in INCOHERENT]
    assert provoked, "scenario produced no incoherent-content interactions"
    assert {truth[e.actor] for e in provoked} == {"automated"}


def test_ground_truth_immutable(small_campaign):
    result, _ = small_campaign
    for a in result.agents:
        assert result.platform.users[a.user_id].archetype_ref == a.archetype.label
    labels = {r["user_id"]: r["class"] for r in result.labels()}
    assert all(labels[a.user_id] == a.archetype.ground_truth_class for a in result.agents)


def test_with_overrides_applies_everywhere():
    spec = with_overrides(PopulationSpec(), follow_back_p=0.0, keyword_trigger_p=0.0)
    assert all(a.follow_back_p == 0 and a.keyword_trigger_p == 0 for a in spec.archetypes.values())
