import json

import numpy as np
import pytest

from gausschan.channel import GaussianChannel
from gausschan.channel_io import load_channel, read_channel_file
from gausschan.cli import EXIT_NEGATIVE, EXIT_OK, EXIT_PARSE, main
from gausschan.models import Report
from gausschan.semigroup import Generator
from tests.random_channels import write_channel_json, write_generator_json


def _channel_file(path, c, label=None):
    return write_channel_json(path, c.x, c.y, label=label)


def _report(capsys) -> Report:
    return Report.model_validate_json(capsys.readouterr().out)


def test_check_identity(tmp_path, capsys):
    path = _channel_file(tmp_path / "id.json", GaussianChannel.identity(1))
    assert main(["check", path, "--json"]) == EXIT_OK
    report = _report(capsys)
    assert report.command == "check"
    assert report.verdict("cp").value is True
    assert report.verdict("reversible").value is True
    assert report.verdict("det_sign").value == "positive"


def test_check_attenuation_is_not_reversible(tmp_path, capsys):
    path = _channel_file(tmp_path / "att.json", GaussianChannel.attenuation(0.5), label="att")
    assert main(["check", path, "--json"]) == EXIT_OK
    report = _report(capsys)
    assert report.label == "att"
    assert report.verdict("reversible").value is False
    assert report.verdict("reversible").certificates["noise_norm"] == pytest.approx(0.5)


def test_check_rejects_non_cp_channel(tmp_path, capsys):
    path = write_channel_json(tmp_path / "bad.json", np.identity(2), -0.1 * np.identity(2))
    assert main(["check", path]) == EXIT_NEGATIVE
    out = capsys.readouterr().out
    assert "cp: false" in out
    assert "not positive semidefinite" in out


@pytest.mark.parametrize(
    "content",
    [
        "{not json",
        '{"schema_version": "1", "n": 1, "x": [[NaN, 0], [0, 1]], "y": [[0, 0], [0, 0]]}',
        '{"schema_version": "1", "n": 2, "x": [[1, 0], [0, 1]], "y": [[0, 0], [0, 0]]}',
        '{"schema_version": "2", "n": 1, "x": [[1, 0], [0, 1]], "y": [[0, 0], [0, 0]]}',
        '{"schema_version": "1", "n": 1, "x": [[1, 0], [0, 1]], "y": [[0, 0], [0, 0]], "z": 1}',
    ],
)
def test_check_unreadable_input(tmp_path, capsys, content):
    path = tmp_path / "broken.json"
    path.write_text(content)
    assert main(["check", str(path)]) == EXIT_PARSE
    assert "error:" in capsys.readouterr().err


def test_check_missing_file(tmp_path, capsys):
    assert main(["check", str(tmp_path / "nowhere.json")]) == EXIT_PARSE


def test_compose_writes_product(tmp_path, capsys):
    first = _channel_file(tmp_path / "a.json", GaussianChannel.attenuation(0.5))
    second = _channel_file(tmp_path / "b.json", GaussianChannel.attenuation(0.4))
    out = tmp_path / "out" / "product.json"
    assert main(["compose", first, second, "--out", str(out)]) == EXIT_OK
    assert "Heisenberg-picture product" in capsys.readouterr().out
    product = load_channel(str(out))
    np.testing.assert_allclose(product.x, np.sqrt(0.2) * np.identity(2), atol=1e-12)
    np.testing.assert_allclose(product.y, 0.8 * np.identity(2), atol=1e-12)


def test_compose_prints_matrices(tmp_path, capsys):
    first = _channel_file(tmp_path / "a.json", GaussianChannel.attenuation(0.5))
    assert main(["compose", first, first, "--json"]) == EXIT_OK
    report = _report(capsys)
    np.testing.assert_allclose(report.matrices["x"].re, 0.5 * np.identity(2), atol=1e-12)
    np.testing.assert_allclose(report.matrices["y"].re, 0.75 * np.identity(2), atol=1e-12)


def test_classify_mirror(tmp_path, capsys):
    path = _channel_file(tmp_path / "mirror.json", GaussianChannel.phase_conjugating_mirror(1))
    assert main(["classify", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "det x < 0: not infinitesimal divisible" in out
    assert "det_sign: negative" in out


def test_classify_attenuation_gauge_case(tmp_path, capsys):
    path = _channel_file(tmp_path / "att.json", GaussianChannel.attenuation(0.5))
    assert main(["classify", path, "--json"]) == EXIT_OK
    report = _report(capsys)
    assert report.verdict("gauge_covariant").value is True
    assert report.verdict("gauge_case").value == "contractive_with_invariant"
    assert report.verdict("gauge_semigroup").value == "yes"
    assert report.verdict("infinitesimal_divisible").value is True
    assert report.verdict("embeddable").value == "yes"
    assert "gauge channel has an invariant state" in report.notes
    np.testing.assert_allclose(report.matrices["invariant_cov"].re, np.identity(2), atol=1e-9)


def test_classify_idempotent(tmp_path, capsys):
    x = np.diag([1.0, 1.0, 0.0, 0.0])
    y = np.diag([0.0, 0.0, 2.5, 2.5])
    path = write_channel_json(tmp_path / "idem.json", x, y)
    assert main(["classify", path, "--json"]) == EXIT_OK
    report = _report(capsys)
    idempotent = report.verdict("idempotent")
    assert idempotent.value is True
    assert idempotent.certificates["k"] == 1
    assert idempotent.certificates["noise"] == pytest.approx([2.5], abs=1e-6)
    assert report.verdict("det_sign").value == "zero"


def test_divide_writes_factors(tmp_path, capsys):
    path = _channel_file(tmp_path / "att.json", GaussianChannel.attenuation(0.5))
    left, right = tmp_path / "left.json", tmp_path / "right.json"
    args = ["divide", path, "--json", "--out-left", str(left), "--out-right", str(right)]
    assert main(args) == EXIT_OK
    report = _report(capsys)
    assert report.verdict("division").value == "positive_class"
    assert report.verdict("left_reversible").value is False
    assert report.verdict("right_reversible").value is False
    assert read_channel_file(str(left)).label == "att left"

    for factor in (left, right):
        assert main(["check", str(factor)]) == EXIT_OK
    capsys.readouterr()


def test_divide_identity_fails(tmp_path, capsys):
    path = _channel_file(tmp_path / "id.json", GaussianChannel.identity(1))
    assert main(["divide", path]) == EXIT_NEGATIVE
    assert "Reversible" in capsys.readouterr().err


def test_semigroup_attenuation(tmp_path, capsys):
    g = Generator.attenuation()
    path = write_generator_json(tmp_path / "gen.json", g.a, g.b, g.h)
    out_dir = tmp_path / "flow"
    assert main(["semigroup", path, "--t", "1", "--out-dir", str(out_dir), "--json"]) == EXIT_OK
    report = _report(capsys)
    assert report.verdict("semigroup_law").value is True
    assert report.verdict("simple_form").value is True
    assert report.verdict("bounded_noise").value is True
    assert report.verdict("invariant_state").value is True

    written = read_channel_file(str(out_dir / "channel_t1.json"))
    assert written.label == "t=1"
    np.testing.assert_allclose(written.x, np.exp(-1.0) * np.identity(2), atol=1e-9)
    np.testing.assert_allclose(written.y, (1 - np.exp(-2.0)) * np.identity(2), atol=1e-9)


def test_semigroup_at_time_zero(tmp_path, capsys):
    g = Generator.attenuation()
    path = write_generator_json(tmp_path / "gen.json", g.a, g.b, g.h)
    assert main(["semigroup", path, "--t", "0", "--json"]) == EXIT_OK
    report = _report(capsys)
    np.testing.assert_allclose(report.matrices["x(t=0)"].re, np.identity(2))
    np.testing.assert_allclose(report.matrices["y(t=0)"].re, np.zeros((2, 2)))


def test_semigroup_squeezing_without_simple_form(tmp_path, capsys):
    g = Generator.squeezing(np.array([[1.0, 0.5], [0.5, 1.0]]))
    path = write_generator_json(tmp_path / "squeeze.json", g.a, g.b, g.h)
    assert main(["semigroup", path, "--t", "0.5", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "no simple form" in out
    assert "simple_form: false" in out
    assert "bounded_noise: indeterminate" in out
    assert "evolve t=0.5" in out


def test_embed_check_unpaired_negative_spectrum(tmp_path, capsys):
    path = write_channel_json(tmp_path / "neg.json", np.diag([-1.0, -2.0]), 3.0 * np.identity(2))
    assert main(["embed-check", path, "--json"]) == EXIT_NEGATIVE
    report = _report(capsys)
    assert report.verdict("embeddable").value == "no"
    assert report.verdict("in_exp_sp") is None


def test_embed_check_minus_identity(tmp_path, capsys):
    path = write_channel_json(tmp_path / "minus.json", -np.identity(2), np.zeros((2, 2)))
    assert main(["embed-check", path, "--json"]) == EXIT_OK
    report = _report(capsys)
    assert report.verdict("embeddable").value == "yes"
    assert report.verdict("in_exp_sp").value == "indeterminate"
    assert "positive_factor" in report.matrices


def test_batch_directory(tmp_path, capsys):
    _channel_file(tmp_path / "b_att.json", GaussianChannel.attenuation(0.5))
    _channel_file(tmp_path / "a_id.json", GaussianChannel.identity(1))
    write_channel_json(tmp_path / "c_bad.json", np.identity(2), -0.1 * np.identity(2))
    (tmp_path / "d_broken.json").write_text("[]")
    (tmp_path / "notes.txt").write_text("ignored")

    assert main(["check", str(tmp_path), "--json", "--workers", "3"]) == EXIT_PARSE
    lines = capsys.readouterr().out.strip().splitlines()
    sources = [json.loads(line)["source"] for line in lines]
    assert [s.rsplit("/", 1)[-1] for s in sources] == ["a_id.json", "b_att.json", "c_bad.json"]


def test_json_output_is_deterministic(tmp_path, capsys):
    path = _channel_file(tmp_path / "att.json", GaussianChannel.attenuation(0.3))
    main(["classify", path, "--json"])
    first = capsys.readouterr().out
    main(["classify", path, "--json"])
    assert capsys.readouterr().out == first
