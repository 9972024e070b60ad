import json
import subprocess
import sys
from fractions import Fraction

import pytest

from microset import serialize
from microset.cli import main
from microset.covers import BallSpec, CoverSeq
from microset.dust import DustSpec, adversary_swallow, generate, refutation_budget_lower
from microset.geometry import Box, DigitalSet

F = Fraction


def box1(lo, hi):
    return Box(((F(lo), F(hi)),))


def run(*argv):
    return main(list(argv))


def test_dust_generate_counts(tmp_path):
    out = tmp_path / "tree.json"
    assert run("dust-generate", "--n", "2", "--b", "3", "--depth", "2", "-o", str(out)) == 0
    data = json.loads(out.read_text())
    assert [len(level) for level in data["levels"]] == [4, 16]


def test_dust_generate_inadmissible_is_verified_negative(tmp_path):
    out = tmp_path / "tree.json"
    assert run("dust-generate", "--n", "2", "--b", "2", "--depth", "2", "-o", str(out)) == 1
    assert not out.exists()


def test_dust_gaps_writes_canonical_table(tmp_path):
    out = tmp_path / "gaps.json"
    assert run("dust-gaps", "--n", "1", "--b", "3", "--depth", "2", "-o", str(out)) == 0
    table = serialize.load(out)
    assert table.sibling_gap == (F(1, 3), F(25, 81))


def test_dust_hmeasure_prints_scalar(capsys):
    assert run("dust-hmeasure", "--n", "1", "--b", "3", "--alpha", "1", "--k", "3") == 0
    assert capsys.readouterr().out.strip() == "8/19683"


def test_cover_verify_exit_codes(tmp_path, capsys):
    e = DigitalSet(1, 3, 1, ((0,), (2,)))
    ok_cover = CoverSeq(
        n=1,
        eps=F(1, 2),
        strong=False,
        pieces=(box1(0, F(1, 2)), box1(F(2, 3), F(11, 12)), box1(F(7, 8), 1)),
    )
    bad_cover = CoverSeq(
        n=1, eps=F(1, 2), strong=False, pieces=(box1(0, F(1, 3)), box1(F(2, 3), 1))
    )
    e_path, good_path, bad_path = (
        tmp_path / "e.json",
        tmp_path / "good.json",
        tmp_path / "bad.json",
    )
    serialize.save(e, e_path)
    serialize.save(ok_cover, good_path)
    serialize.save(bad_cover, bad_path)
    assert run("cover-verify", "--set", str(e_path), "--cover", str(good_path)) == 0

    report_path = tmp_path / "report.json"
    code = run(
        "cover-verify",
        "--set",
        str(e_path),
        "--cover",
        str(bad_path),
        "-o",
        str(report_path),
    )
    assert code == 1
    assert "position 2" in capsys.readouterr().err
    report = serialize.load(report_path)
    assert report.first_violation == (2, "budget")


def test_cover_search_round_trip(tmp_path):
    e = DigitalSet(1, 3, 2, ((0,), (4,)))
    e_path = tmp_path / "e.json"
    out = tmp_path / "cover.json"
    serialize.save(e, e_path)
    assert run("cover-search", "--set", str(e_path), "--eps", "1/2", "-o", str(out)) == 0
    cover = serialize.load(out)
    assert isinstance(cover, CoverSeq) and cover.strong


def test_cover_search_negative_and_usage(tmp_path):
    seg = DigitalSet(2, 3, 3, tuple((j, 0) for j in range(27)))
    e_path = tmp_path / "seg.json"
    serialize.save(seg, e_path)
    assert run("cover-search", "--set", str(e_path), "--eps", "1/100") == 1
    assert run("cover-search", "--set", str(e_path)) == 2
    assert run("cover-search", "--set", str(e_path), "--eps", "1/2", "--s", "2") == 2


def test_cover_merge_cli(tmp_path):
    a = CoverSeq(n=1, eps=F(1, 4), strong=False, pieces=(box1(0, F(1, 4)),))
    b = CoverSeq(n=1, eps=F(1, 4), strong=False, pieces=(box1(F(3, 4), 1),))
    pa, pb, out = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "m.json"
    serialize.save(a, pa)
    serialize.save(b, pb)
    assert run("cover-merge", "--covers", str(pa), str(pb), "--eps", "1/2", "-o", str(out)) == 0
    merged = serialize.load(out)
    assert len(merged.pieces) == 2
    # weak inputs are a verified negative, not a crash
    weak = tmp_path / "weak.json"
    serialize.save(CoverSeq(n=1, eps=F(1, 2), strong=False, pieces=(box1(0, F(1, 2)),)), weak)
    assert run("cover-merge", "--covers", str(weak), str(pb), "--eps", "1/2", "-o", str(out)) == 1


def test_ball_check_paths(tmp_path, capsys):
    k = DigitalSet(1, 3, 3, ((13,),))
    ball = BallSpec(n=1, boxes=(box1(F(2, 5), F(3, 5)),))
    kp, bp = tmp_path / "k.json", tmp_path / "ball.json"
    serialize.save(k, kp)
    serialize.save(ball, bp)
    assert run("ball-check", "--set", str(kp), "--ball", str(bp)) == 0
    assert run("ball-check", "--set", str(kp), "--ball", str(bp), "--witness", "1/2") == 0
    assert "11/135" in capsys.readouterr().out
    outside = DigitalSet(1, 3, 3, ((0,),))
    op = tmp_path / "o.json"
    serialize.save(outside, op)
    assert run("ball-check", "--set", str(op), "--ball", str(bp)) == 1


def test_hausdorff_cli(tmp_path, capsys):
    a = DigitalSet(1, 3, 2, ((0,),))
    b = DigitalSet(1, 3, 2, ((8,),))
    pa, pb, out = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "h.json"
    serialize.save(a, pa)
    serialize.save(b, pb)
    assert run("hausdorff", "--a", str(pa), "--b", str(pb), "--depth", "6", "-o", str(out)) == 0
    bracket = serialize.load(out)
    assert bracket.lo <= F(8, 9) <= bracket.hi


def test_baire_sample_matches_library(tmp_path):
    out = tmp_path / "sample.json"
    assert run(
        "baire-sample",
        "--n", "2", "--b", "3", "--depth", "3",
        "--density", "1/10", "--seed", "42",
        "-o", str(out),
    ) == 0
    from microset.baire import SampleSpec, sample_compact

    expected = sample_compact(SampleSpec(seed=42, n=2, b=3, depth=3, density=F(1, 10)))
    assert serialize.load(out) == expected


def test_render_svg_byte_identical(tmp_path):
    tree_path = tmp_path / "tree.json"
    assert run("dust-generate", "--n", "2", "--b", "3", "--depth", "2", "-o", str(tree_path)) == 0
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run("render-svg", "--tree", str(tree_path), "-o", str(a)) == 0
    assert run("render-svg", "--tree", str(tree_path), "-o", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes().startswith(b"<svg ")


def test_render_svg_rejects_line_trees(tmp_path):
    tree_path = tmp_path / "tree1.json"
    assert run("dust-generate", "--n", "1", "--b", "3", "--depth", "2", "-o", str(tree_path)) == 0
    assert run("render-svg", "--tree", str(tree_path), "-o", str(tmp_path / "x.svg")) == 2


def test_malformed_file_is_usage_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("cover-verify", "--set", str(bad), "--cover", str(bad)) == 2
    wrong = tmp_path / "wrong.json"
    serialize.save(DigitalSet(1, 3, 1, ((0,),)), wrong)
    assert run("cover-verify", "--set", str(wrong), "--cover", str(wrong)) == 2
    missing = tmp_path / "missing.json"
    assert run("cover-verify", "--set", str(missing), "--cover", str(missing)) == 2


def test_unknown_subcommand_is_usage_error():
    assert run("no-such-command") == 2


def test_thread_cap_validation(tmp_path, monkeypatch):
    out = tmp_path / "tree.json"
    monkeypatch.setenv("MICROSET_THREADS", "4")
    assert run("dust-generate", "--n", "1", "--b", "3", "--depth", "1", "-o", str(out)) == 0
    monkeypatch.setenv("MICROSET_THREADS", "zero")
    assert run("dust-gaps", "--n", "1", "--b", "3", "--depth", "1") == 2
    monkeypatch.setenv("MICROSET_THREADS", "0")
    assert run("dust-gaps", "--n", "1", "--b", "3", "--depth", "1") == 2


def test_precision_flag_validation(tmp_path):
    assert run("dust-hmeasure", "--n", "1", "--b", "3", "--alpha", "1/2", "--k", "2",
               "--precision", "1") == 2
    assert run("dust-hmeasure", "--n", "1", "--b", "3", "--alpha", "1/2", "--k", "2",
               "--precision", "100") == 0


def test_refute_cli_full_cycle(tmp_path):
    spec = DustSpec(n=1, b=3, depth=4)
    tree = generate(spec)
    eps = refutation_budget_lower(spec)
    cover = adversary_swallow(tree, eps, 8)
    tp, cp, certp = tmp_path / "tree.json", tmp_path / "cover.json", tmp_path / "cert.json"
    serialize.save(tree, tp)
    serialize.save(cover, cp)
    assert run("dust-refute", "--tree", str(tp), "--cover", str(cp), "-o", str(certp)) == 0
    assert run("dust-refute", "--tree", str(tp), "--cover", str(cp), "--check", str(certp)) == 0
    # over-budget premises are a verified negative
    fat = CoverSeq(n=1, eps=F(1, 2), strong=False, pieces=(box1(0, F(1, 2)),))
    fatp = tmp_path / "fat.json"
    serialize.save(fat, fatp)
    assert run("dust-refute", "--tree", str(tp), "--cover", str(fatp)) == 1
    # tampered certificate is rejected on --check
    cert = serialize.load(certp)
    from microset.dust import SurvivorCertificate

    forged = SurvivorCertificate(
        depth=cert.depth,
        checked_prefix=cert.checked_prefix,
        survivor_word=(1, 1, 1, 1),
        level_counts=cert.level_counts,
    )
    forgedp = tmp_path / "forged.json"
    serialize.save(forged, forgedp)
    assert run("dust-refute", "--tree", str(tp), "--cover", str(cp), "--check", str(forgedp)) == 1


def test_console_script_in_subprocess(tmp_path):
    out = tmp_path / "tree.json"
    proc = subprocess.run(
        [sys.executable, "-m", "microset", "dust-generate",
         "--n", "1", "--b", "3", "--depth", "1", "-o", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert out.exists()


def test_emitted_documents_reparse_and_revalidate(tmp_path):
    # round-trip byte stability through the CLI for each emitted format
    tree_path = tmp_path / "tree.json"
    gaps_path = tmp_path / "gaps.json"
    run("dust-generate", "--n", "2", "--b", "3", "--depth", "2", "-o", str(tree_path))
    run("dust-gaps", "--n", "2", "--b", "3", "--depth", "2", "-o", str(gaps_path))
    for path in (tree_path, gaps_path):
        blob = path.read_bytes()
        obj = serialize.from_json(json.loads(blob))
        assert serialize.canonical_bytes(serialize.to_json(obj)) == blob
