import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from honeysim.platform import (
    InteractionEvent,
    Platform,
    PlatformError,
    RateLimitPolicy,
    Status,
    SuspendedAccountError,
    read_log,
    replay_counters,
)


@pytest.fixture
def p():
    plat = Platform()
    for h in ("ann", "bob", "cat"):
        plat.create_user(h)
    return plat


def test_follow_updates_both_counters(p):
    ev = p.interact(0, "follow", 1)
    assert ev == InteractionEvent(0, 0, "follow", 1, None, None)
    assert p.users[0].friends_count == 1 and p.users[1].followers_count == 1
    assert p.friends(0) == {1} and p.followers(1) == {0}


def test_repeat_follow_is_noop(p):
    p.interact(0, "follow", 1)
    assert p.interact(0, "follow", 1) is None
    assert p.users[0].friends_count == 1
    assert len(p.noops) == 1


def test_self_follow_and_unknown_kind_rejected(p):
    with pytest.raises(PlatformError):
        p.interact(0, "follow", 0)
    with pytest.raises(PlatformError):
        p.interact(0, "poke", 1)
    with pytest.raises(PlatformError):
        p.interact(0, "follow", 99)


def test_duplicate_handle_rejected(p):
    with pytest.raises(PlatformError):
        p.create_user("ann")
    assert p.user_by_handle("bob") == 1
    with pytest.raises(KeyError):
        p.user_by_handle("nobody")


def test_dangling_status_rejected(p):
    with pytest.raises(PlatformError, match="dangling"):
        p.interact(0, "favourite", 1, 5)


def test_engagement_must_match_author(p):
    sid = p.post_status(1, ["hello"])
    with pytest.raises(PlatformError):
        p.interact(0, "favourite", 2, sid)


def test_retweet_of_retweet_targets_original(p):
    sid = p.post_status(1, ["water", "crisis"])
    p.interact(2, "retweet", 1, sid)
    rt = p.statuses[-1]
    assert rt.retweet_of == sid and rt.author == 2
    ev = p.interact(0, "retweet", 1, rt.id)
    assert ev.target_status == sid
    assert p.statuses[-1].retweet_of == sid


def test_mentions_and_hashtags_must_appear(p):
    with pytest.raises(PlatformError):
        p.post_status(0, ["hi"], mentions=[1])
    with pytest.raises(PlatformError):
        p.post_status(0, ["hi"], hashtags=["vote"])
    sid = p.post_status(0, ["hi", "@bob", "#Vote"], mentions=[1], hashtags=["#Vote"])
    assert p.statuses[sid].hashtags == ("vote",)
    with pytest.raises(PlatformError):
        p.post_status(0, [])
    with pytest.raises(PlatformError):
        p.post_status(0, ["hi"], language="fr")


def test_attribution_only_with_a_honeypot(p):
    p.mark_honeypot(2)
    assert p.interact(0, "follow", 1, technique=4).technique is None
    assert p.interact(0, "follow", 2, technique=4).technique == 4
    assert p.interact(2, "follow", 1, technique=1).technique == 1


def test_search_window_and_phrase(p):
    for tick in range(5):
        p.post_status(0, ["land", "reform", f"t{tick}"])
        p.post_status(1, ["reform", "land"])
        p.end_tick()
    found = p.search_statuses("LAND", 1, 3)
    assert [s.tick for s in found] == [1, 1, 2, 2]
    assert [s.tick for s in p.search_statuses("land reform", 0, 5)] == [0, 1, 2, 3, 4]
    assert p.search_statuses("land", 3, 3) == []
    assert p.search_statuses("nothing", 0, 5) == []


def test_search_skips_retweets_and_mentions(p):
    sid = p.post_status(0, ["#vote", "@bob"], hashtags=["vote"], mentions=[1])
    p.interact(2, "retweet", 0, sid)
    assert [s.id for s in p.search_statuses("vote", 0, 1)] == [sid]
    assert p.search_statuses("bob", 0, 1) == []


def test_stream_filter_current_tick_geo(p):
    p.post_status(0, ["vote", "now"], geotag="ZA")
    p.post_status(1, ["vote"], geotag=None)
    assert [s.author for s in p.stream_filter(["vote"], geo="ZA")] == [0]
    assert len(p.stream_filter(["#vote"])) == 2
    p.end_tick()
    assert p.stream_filter(["vote"]) == []


def test_statuses_by_window(p):
    for _ in range(4):
        p.post_status(0, ["x"])
        p.end_tick()
    assert [s.tick for s in p.statuses_by(0, 1, 3)] == [1, 2]
    assert [s.tick for s in p.statuses_by(0)] == [0, 1, 2, 3]
    assert p.latest_status(0).tick == 3
    assert p.latest_status(1) is None


def test_rate_limit_and_suspension():
    plat = Platform(RateLimitPolicy(max_actions_per_tick=2, max_follows_per_day=400, suspension_threshold=2))
    ids = [plat.create_user(f"u{i}") for i in range(10)]
    suspended_at = None
    for day in range(3):
        for t in range(24):
            if plat.users[0].suspended:
                break
            if t == 0:
                results = [plat.interact(0, "follow", u) for u in ids[1 + 3 * day: 4 + 3 * day]]
                assert results[-1] is None
            if plat.end_tick():
                suspended_at = plat.tick - 1
    assert plat.users[0].suspended
    assert suspended_at == 24
    with pytest.raises(SuspendedAccountError):
        plat.post_status(0, ["x"])


def test_daily_follow_cap_resets():
    plat = Platform(RateLimitPolicy(max_actions_per_tick=10, max_follows_per_day=2))
    ids = [plat.create_user(f"u{i}") for i in range(6)]
    assert plat.interact(0, "follow", 1) and plat.interact(0, "follow", 2)
    assert plat.interact(0, "follow", 3) is None
    for _ in range(24):
        plat.end_tick()
    assert plat.interact(0, "follow", 3) is not None
    assert ids


def test_log_round_trip_and_replay(p):
    p.users[0].friends_count = 5
    p.users[0].baseline = (0, 5, 0)
    sid = p.post_status(1, ["hello", "@ann"], mentions=[0])
    p.interact(0, "follow", 1)
    p.interact(2, "retweet", 1, sid)
    buf = io.StringIO()
    p.write_log(buf)
    back = read_log(io.StringIO(buf.getvalue()))
    assert back == p.log
    counts = replay_counters(back, p.users)
    for u in p.users:
        assert counts[u.id] == (u.statuses_count, u.friends_count, u.followers_count)


def test_read_log_rejects_unknown_type():
    with pytest.raises(ValueError, match="line 1"):
        read_log(['{"type": "nope"}'])


def test_bad_policy():
    with pytest.raises(ValueError):
        RateLimitPolicy(max_actions_per_tick=0)


ops = st.lists(
    st.tuples(st.sampled_from(["post", "follow", "favourite", "retweet", "tick"]),
              st.integers(0, 4), st.integers(0, 4), st.integers(0, 30)),
    max_size=80,
)


@settings(max_examples=200, deadline=None)
@given(ops)
def test_counters_always_match_log(seq):
    plat = Platform(RateLimitPolicy(max_actions_per_tick=3, max_follows_per_day=5, suspension_threshold=2))
    for i in range(5):
        plat.create_user(f"u{i}", statuses_count=i, followers_count=2 * i)
    for op, a, b, k in seq:
        if op == "tick":
            plat.end_tick()
            continue
        if plat.users[a].suspended:
            continue
        if op == "post":
            plat.post_status(a, [f"w{k}"])
        elif op == "follow":
            if a != b:
                plat.interact(a, "follow", b)
        elif plat.statuses:
            st_ = plat.statuses[k % len(plat.statuses)]
            orig = plat.statuses[st_.retweet_of] if st_.is_retweet else st_
            plat.interact(a, op, orig.author, st_.id)
    counts = replay_counters(plat.log, plat.users)
    for u in plat.users:
        assert counts[u.id] == (u.statuses_count, u.friends_count, u.followers_count)
        assert u.friends_count - u.baseline[1] == len(plat.friends(u.id))
    assert all(isinstance(r, (Status, InteractionEvent)) for r in plat.log)
