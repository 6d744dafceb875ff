import json

import pytest

from honeysim import ConfigError, load_config, parse_config
from honeysim.cli import main
from honeysim.outputs import TEXT_FILES, sha256_file

TINY = "seed: 3\nticks: 12\nwarmup_ticks: 24\npopulation: {total: 120}\nhoneypots: [[1, 13], [10], [4, 28]]\n"


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


# -- config -----------------------------------------------------------------------


def test_defaults():
    cfg = parse_config({"seed": 1})
    assert cfg.preset == "figure2" and len(cfg.honeypots) == 41
    assert cfg.settings.ticks == 168 and cfg.population.total == 1000
    assert cfg.noise.mode == "beta" and cfg.threshold == 0.5


def test_seed_is_mandatory():
    with pytest.raises(ConfigError, match="seed"):
        parse_config({})
    with pytest.raises(ConfigError, match="seed"):
        parse_config({"seed": None})


@pytest.mark.parametrize("data, match", [
    ({"seed": 1, "colour": "red"}, "unknown keys"),
    ({"seed": 1, "population": {"size": 3}}, "population"),
    ({"seed": 1, "population": {"mix": {"CasualHuman": 0.4}}}, "sum"),
    ({"seed": 1, "population": {"archetypes": {"Robot": {}}}}, "unknown archetype"),
    ({"seed": 1, "population": {"archetypes": {"Cyborg": {"wings": 1}}}}, "Cyborg"),
    ({"seed": 1, "honeypots": "figure3"}, "preset"),
    ({"seed": 1, "ticks": -1}, ">= 0"),
    ({"seed": 1, "settings": {"speed": 2}}, "settings"),
    ({"seed": 1, "noise": {"volume": 2}}, "noise"),
    ({"seed": "abc"}, "abc"),
])
def test_invalid_configs(data, match):
    with pytest.raises(ConfigError, match=match):
        parse_config(data)


def test_missing_input_file_names_path(tmp_path):
    with pytest.raises(ConfigError, match="news: file not found: .*nope.tsv"):
        parse_config({"seed": 1, "news": "nope.tsv"}, tmp_path)


def test_overrides_and_relative_paths(tmp_path):
    write(tmp_path / "actors.txt", "ana 1\nbo 0\n")
    cfg_path = write(tmp_path / "c.yaml", (
        "seed: 4\nticks: 24\nnews_per_day: 3\noutput: runs/x\nactors: actors.txt\n"
        "noise: {mode: oracle}\nthreshold: 0.6\n"
        "population:\n  total: 50\n  tracked_actors: 2\n  archetypes: {FollowBackBot: {follow_back_p: 0.5}}\n"
        "  profiles: {followers: {median: 100, dispersion: 1.0}, age_days: [30, 60]}\n"
        "settings: {start_date: 2020-01-06, limits: {max_follows_per_day: 9}}\n"
        "honeypots:\n  - {id: 3, techniques: [1], budgets: {1: 2}}\n"
    ))
    cfg = load_config(cfg_path)
    assert cfg.output == tmp_path / "runs/x" and cfg.actors_file == tmp_path / "actors.txt"
    assert cfg.registry().handles == ["ana", "bo"]
    assert cfg.settings.news_per_day == 3 and cfg.settings.limits.max_follows_per_day == 9
    assert str(cfg.settings.start_date) == "2020-01-06"
    assert cfg.population.archetypes["FollowBackBot"].follow_back_p == 0.5
    assert cfg.population.profiles.followers.median == 100
    assert cfg.population.profiles.age_days == (30, 60)
    assert cfg.noise.mode == "oracle" and cfg.threshold == 0.6
    assert cfg.honeypots[0].budget(1) == 2
    assert len(cfg.sha256) == 64


def test_load_errors(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_config(tmp_path / "absent.yaml")
    with pytest.raises(ConfigError):
        load_config(write(tmp_path / "bad.yaml", "seed: [1,\n"))


# -- cli ---------------------------------------------------------------------------


def test_missing_config_exit_code(tmp_path, capsys):
    missing = tmp_path / "nowhere.yaml"
    assert main(["run", str(missing), "--out", str(tmp_path / "o")]) == 1
    err = capsys.readouterr().err
    assert err.startswith("honeysim: error:") and str(missing) in err


def test_zero_ticks_gives_empty_reports(tmp_path):
    cfg = write(tmp_path / "c.yaml", TINY)
    out = tmp_path / "run"
    assert main(["run", str(cfg), "--ticks", "0", "--out", str(out)]) == 0
    table2 = (out / "table2.csv").read_text(encoding="utf-8").splitlines()
    assert len(table2) == 2 and table2[1].startswith("Total,0,")
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert report["precision"] is None and report["recall"] == 0.0 and report["ticks"] == 0


@pytest.fixture(scope="module")
def run_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    cfg = write(root / "c.yaml", TINY)
    out = root / "run"
    assert main(["run", str(cfg), "--out", str(out)]) == 0
    return cfg, out


def test_run_writes_everything(run_dir):
    _, out = run_dir
    for name in TEXT_FILES:
        assert (out / name).is_file(), name
    for fig in ("techniques.png", "honeypots.png", "followers.png", "account_age.png"):
        assert (out / "figures" / fig).stat().st_size > 0
    manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
    for name, digest in manifest["files"].items():
        assert sha256_file(out / name) == digest
    assert manifest["seed"] == 3
    assert not list(out.parent.glob(".run.tmp-*"))


def test_existing_output_needs_force(run_dir, capsys):
    cfg, out = run_dir
    assert main(["run", str(cfg), "--out", str(out), "--no-figures"]) == 1
    assert "--force" in capsys.readouterr().err
    assert main(["run", str(cfg), "--out", str(out), "--force"]) == 0


def test_report_reproduces_run(run_dir, tmp_path, capsys):
    _, out = run_dir
    dest = tmp_path / "again"
    assert main(["report", str(out), "--out", str(dest), "--no-figures"]) == 0
    printed = capsys.readouterr().out
    for name in ("table2.csv", "honeypots.csv", "recall.csv", "table3.csv", "report.json"):
        assert (dest / name).read_bytes() == (out / name).read_bytes(), name
    assert printed == (out / "table2.csv").read_text(encoding="utf-8")


def test_report_threshold_changes_counts(run_dir, tmp_path):
    _, out = run_dir
    assert main(["report", str(out), "--out", str(tmp_path / "t"), "--threshold", "0.99", "--no-figures"]) == 0
    report = json.loads((tmp_path / "t" / "report.json").read_text(encoding="utf-8"))
    assert report["n_bots"] <= json.loads((out / "report.json").read_text(encoding="utf-8"))["n_bots"]


def test_report_missing_files(tmp_path, capsys):
    assert main(["report", str(tmp_path)]) == 1
    assert "events.ndjson" in capsys.readouterr().err


def test_replications(tmp_path, capsys):
    cfg = write(tmp_path / "c.yaml", TINY)
    out = tmp_path / "reps"
    assert main(["run", str(cfg), "--out", str(out), "--replications", "2", "--jobs", "2", "--no-figures"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2 and "seed=3" in lines[0] and "seed=4" in lines[1]
    a, b = (json.loads((out / d / "manifest.json").read_text()) for d in ("rep-001", "rep-002"))
    assert a["seed"] == 3 and b["seed"] == 4
    assert a["files"]["events.ndjson"] != b["files"]["events.ndjson"]


def test_catalogue_and_ingest(tmp_path, capsys):
    assert main(["catalogue"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 38
    actors = write(tmp_path / "a.txt", "ana 1\nbo 0\n")
    assert main(["ingest", "actors", str(actors)]) == 0
    assert capsys.readouterr().out.strip() == "actors=2\tleaders=1"
    bad = write(tmp_path / "b.txt", "ana maybe\n")
    assert main(["ingest", "actors", str(bad)]) == 1
    news = write(tmp_path / "n.tsv", "date\theadline\tabstract\n2019-03-01\th\ta\n")
    assert main(["ingest", "news", str(news)]) == 0
    script = write(tmp_path / "s.tsv", "0\tana\thello\n")
    assert main(["ingest", "actor-statuses", str(script)]) == 0
    assert "statuses=1" in capsys.readouterr().out


def test_unknown_scripted_actor(tmp_path, capsys):
    write(tmp_path / "s.tsv", "0\tghost\thello\n")
    cfg = write(tmp_path / "c.yaml", TINY + "actor_statuses: s.tsv\n")
    assert main(["run", str(cfg), "--out", str(tmp_path / "o"), "--no-figures"]) == 1
    assert "ghost" in capsys.readouterr().err
    assert not (tmp_path / "o").exists()
