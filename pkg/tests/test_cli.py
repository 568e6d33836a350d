"""Command-line regression tests: pinned stdout for each fixture,
exit-code mapping, and the report bundle on disk."""

import csv
import json
from pathlib import Path

import pytest

from cremona.cli import main

FIXTURES = Path(__file__).parent / 'fixtures' / 'cli'
CASES = sorted(p.stem for p in FIXTURES.glob('*.args'))


@pytest.mark.parametrize('name', CASES)
def test_fixture_output_is_stable(name, capsys):
    argv = json.loads((FIXTURES / f'{name}.args').read_text())
    assert main(argv) == 0
    expected = (FIXTURES / f'{name}.expected').read_text()
    assert capsys.readouterr().out == expected


def test_parse_failures_exit_2(capsys):
    assert main(['order', '--map', '(x:y:z) -> (x : y)']) == 2
    assert main(['order', '--map', '(x:y:z) -> (x : y : )']) == 2
    assert main(['fixed-curve', '--surface', 'BOGUS',
                 '--aut', '(w : x : y : z)']) == 2


def test_cap_exhaustion_exits_3(tmp_path, capsys):
    config = tmp_path / 'caps.json'
    config.write_text(json.dumps({'order_cap': 4}))
    rc = main(['--config', str(config), 'order',
               '--map', '(x:y:z) -> (x : y : zeta(9)*z)'])
    assert rc == 3


def test_conductor_cap_guards_classify(capsys):
    assert main(['classify', '--order', '2001']) == 3


def test_bad_config_exits_2(tmp_path, capsys):
    config = tmp_path / 'caps.json'
    config.write_text(json.dumps({'order_cap': 4, 'bogus': 1}))
    quadratic = '(x:y:z) -> (y*z : x*z : x*y)'
    assert main(['--config', str(config), 'order', '--map', quadratic]) == 2
    config.write_text('{not json')
    assert main(['--config', str(config), 'order', '--map', quadratic]) == 2


def test_config_adjusts_caps(tmp_path, capsys):
    config = tmp_path / 'caps.json'
    config.write_text(json.dumps({'order_cap': 128}))
    assert main(['--config', str(config), 'order',
                 '--map', '(x:y:z) -> (x : y : zeta(81)*z)']) == 0
    assert '81' in capsys.readouterr().out


def test_power_and_order_agree(capsys):
    assert main(['power', '--map', '(x:y:z) -> (x : y : zeta(9)*z)',
                 '--k', '3']) == 0
    out = capsys.readouterr().out
    assert 'zeta(3)' in out


def test_report_bundle(tmp_path, capsys):
    out = tmp_path / 'bundle'
    assert main(['report', '--order', '4', '--out', str(out)]) == 0
    payload = json.loads((out / 'report.json').read_text())
    assert payload['order'] == 4 and payload['count'] == 'infinite'
    with open(out / 'representatives.csv', newline='') as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ['name', 'map', 'order', 'separation']
    assert [r[0] for r in rows[1:]] == ['jonq-g001', 'jonq-g003', 'jonq-g005']
    assert all(r[2] == '4' for r in rows[1:])
    png = (out / 'separation.png').read_bytes()
    assert png[:8] == b'\x89PNG\r\n\x1a\n' and len(png) > 1000
