"""
Unit tests for the ``seqrecover.cli`` module.
"""

import json
import pathlib

import pytest

from seqrecover import cli


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["oracle", "dtw", "010110", "010"], "1"),
        (["oracle", "edit", "0101", ""], "4"),
        (["oracle", "frechet", "1", "11"], "0"),
        (["oracle", "dtw", "0,1", "1/2"], "1"),
        (["oracle", "dtw", "00", "1", "--p", "2"], "2"),
        (["oracle", "dtw", "01", "1/3", "--p", "inf"], "2/3"),
        (["oracle", "edit", "01", "W,W"], "2"),
    ],
)
def test__oracle(argv: list[str], expected: str, capsys: pytest.CaptureFixture):
    """
    Test that the oracle command prints the exact distance.
    """

    assert cli.SUCCESS == cli.main(argv)
    assert f"{expected}\n" == capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["oracle", "dtw", "0,W", "1"],
        ["oracle", "dtw", "", "1"],
        ["oracle", "edit", "0,1/2", "1"],
        ["oracle", "edit", "0,x", "1"],
        ["recover", "edit.magic", "4", "--exhaustive"],
        ["recover", "edit.adaptive.unit", "99", "--exhaustive"],
        ["recover", "dtw.adaptive.half", "4", "--hidden", ""],
        ["verify", "proof"],
    ],
)
def test__usage_errors(argv: list[str]):
    """
    Test that bad input is reported with the usage exit code.
    """

    assert cli.USAGE == cli.main(argv)


def test__recover__exhaustive(capsys: pytest.CaptureFixture):
    """
    Test that an exhaustive run prints one JSON line per input.
    """

    assert cli.SUCCESS == cli.main(
        ["recover", "edit.nonadaptive.wildcard", "4", "--exhaustive"]
    )

    lines = [json.loads(line) for line in capsys.readouterr().out.splitlines()]

    assert 31 == len(lines)
    assert all(line["correct"] and line["bound_ok"] for line in lines)
    assert all(line["hidden"] == line["recovered"] for line in lines)
    assert 16 == lines[0]["config"]["max-n"]


def test__recover__random(capsys: pytest.CaptureFixture):
    """
    Test that a seeded sample is reproducible.
    """

    argv = ["recover", "dtw.nonadaptive.fourquery", "8", "--random", "7", "5"]

    assert cli.SUCCESS == cli.main(argv)
    first = capsys.readouterr().out
    assert cli.SUCCESS == cli.main(argv)

    assert first == capsys.readouterr().out
    assert 5 == len(first.splitlines())


def test__recover__replay(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture):
    """
    Test that a recorded transcript replays to the same recovery.
    """

    assert cli.SUCCESS == cli.main(
        [
            "recover",
            "dtw.nonadaptive.twoextra",
            "6",
            "--hidden",
            "110010",
            "--transcript",
        ]
    )
    (line,) = capsys.readouterr().out.splitlines()
    recorded = json.loads(line)
    transcript = tmp_path / "transcript.json"
    transcript.write_text(json.dumps(recorded["transcript"]))

    assert "110010" == recorded["recovered"]
    assert "hidden" not in recorded["transcript"]
    assert cli.SUCCESS == cli.main(
        ["recover", "dtw.nonadaptive.twoextra", "6", "--replay", str(transcript)]
    )
    assert "110010" == json.loads(capsys.readouterr().out)["recovered"]


def test__recover__config_file(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture):
    """
    Test that a user configuration file is layered over the defaults.
    """

    config = tmp_path / "seqrecover.yaml"
    config.write_text("seqrecover:\n  options:\n    two-extra-scale: 2\n")

    assert cli.SUCCESS == cli.main(
        [
            "recover",
            "dtw.nonadaptive.twoextra",
            "5",
            "--hidden",
            "01101",
            "--config",
            str(config),
        ]
    )
    output = json.loads(capsys.readouterr().out)

    assert "01101" == output["recovered"]
    assert 2 == output["config"]["two-extra-scale"]


def test__table(capsys: pytest.CaptureFixture):
    """
    Test that the table has one record per strategy.
    """

    assert cli.SUCCESS == cli.main(["table", "3"])

    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]

    assert 14 == len(records)
    assert all(record["n"] == 3 for record in records)
    assert not any(record["wrong"] or record["over_bound"] for record in records)


def test__verify(capsys: pytest.CaptureFixture):
    """
    Test that a suite report is printed as JSON.
    """

    assert cli.SUCCESS == cli.main(["verify", "mss-pair"])

    report = json.loads(capsys.readouterr().out)

    assert "mss-pair" == report["claim_id"]
    assert "pass" == report["result"]


def test__no_command(capsys: pytest.CaptureFixture):
    """
    Test that no command prints the help.
    """

    assert cli.SUCCESS == cli.main([])
    assert "usage" in capsys.readouterr().out
