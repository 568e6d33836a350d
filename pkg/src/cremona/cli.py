"""Command line interface.

Subcommands cover the class reports (``classify``, ``report``), map
analysis (``invariants``, ``order``, ``fixed-curve``, ``compose``,
``power``), seed search for involutions (``root``), and lattice orbit
reports (``picard``).  Exit codes: 0 on success, 2 on parse errors,
3 when a configured cap stopped the computation.

An optional JSON config file adjusts the caps, e.g.
``{"order_cap": 128, "degree_bound": 1024}``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import figures
from .birmaps import BirMapP1P1, BirMapP2, component_genus, fixed_curve
from .birmaps import compose as compose_maps
from .birmaps import order as birmap_order
from .classify import (
    CapExceeded,
    Caps,
    ClassReport,
    MapExpr,
    classify_order,
    invariants_of,
    parse_aut,
    parse_map,
)
from .delpezzo import MonomialAut, aut_order, aut_power, fixed_locus
from .jonquieres import JonqElement, jonq_compose, jonq_order, root_search
from .mapexpr import MapSyntaxError, parse_polynomial
from .picard import (
    LatticeIsometry,
    PicLattice,
    exceptional_classes,
    invariant_rank,
    isometry_order,
    orbits,
    rank_one_orbit_check,
    weyl_word,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3


def _load_caps(path: Optional[str]) -> Caps:
    if path is None:
        return Caps()
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise MapSyntaxError(f'cannot read config {path}: {err}') from err
    if not isinstance(data, dict):
        raise MapSyntaxError('config must be a JSON object')
    return Caps.from_dict(data)


def _target(args) -> MapExpr:
    if getattr(args, 'map', None) is not None:
        if getattr(args, 'surface', None) or getattr(args, 'aut', None):
            raise MapSyntaxError('give either --map or --surface with --aut')
        return parse_map(args.map)
    if getattr(args, 'surface', None) and getattr(args, 'aut', None):
        return parse_aut(args.surface, args.aut)
    raise MapSyntaxError('give either --map or --surface with --aut')


def _aut_order_capped(aut: MonomialAut, surface, caps: Caps) -> int:
    try:
        return aut_order(aut, surface, cap=caps.order_cap)
    except ValueError as err:
        if 'exceeds the cap' in str(err):
            raise CapExceeded(str(err)) from err
        raise


def _order_of(expr: MapExpr, caps: Caps) -> int:
    obj = expr.parsed
    if isinstance(obj, JonqElement):
        n = jonq_order(obj, cap=caps.order_cap)
    elif isinstance(obj, MonomialAut):
        return _aut_order_capped(obj, expr.surface, caps)
    else:
        n = birmap_order(obj, cap=caps.order_cap, degree_bound=caps.degree_bound)
    if n is None:
        raise CapExceeded(f'order not found within the cap of {caps.order_cap}')
    return n


def _self_power(obj, k: int):
    if isinstance(obj, MonomialAut):
        return aut_power(obj, k)
    out = obj
    for _ in range(k - 1):
        if isinstance(obj, JonqElement):
            out = jonq_compose(out, obj)
        else:
            out = compose_maps(out, obj)
    return out


def _emit(payload, as_json: bool, text_lines) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


# ===== handlers =====

def _cmd_classify(args, caps: Caps) -> int:
    if args.order > caps.conductor_cap:
        raise CapExceeded(f'order {args.order} exceeds the conductor cap '
                          f'of {caps.conductor_cap}')
    report = classify_order(args.order, args.family_size, caps)
    _emit(report.as_dict(), args.json, _report_lines(report))
    return EXIT_OK


def _report_lines(report: ClassReport):
    yield f'order {report.order}: {report.count} conjugacy classes'
    yield 'representatives:'
    for name, obj, verified in report.representatives:
        yield f'  {name} (order {verified}): {obj}'
    if report.certificates:
        yield 'certificates:'
    for cert in report.certificates:
        a, b = cert['pair']
        v1, v2 = cert['values']
        tag = 'checked' if cert.get('checked') else f"cited: {cert['cited']}"
        yield f'  {a} vs {b}: {cert["invariant"]}: {v1} != {v2} [{tag}]'


def _cmd_invariants(args, caps: Caps) -> int:
    record = invariants_of(_target(args), caps)
    lines = [f"order {record['order']}: {record['map']}"]
    for entry in record['powers']:
        if not entry['computed']:
            lines.append(f"  power {entry['power']}: not inspected")
            continue
        if entry['curves']:
            for curve in entry['curves']:
                j = f", j = {curve['j']}" if curve['j'] is not None else ''
                lines.append(f"  power {entry['power']}: genus {curve['genus']}"
                             f"{j}: {curve['equation']}")
        else:
            lines.append(f"  power {entry['power']}: no non-rational fixed curves")
    _emit(record, args.json, lines)
    return EXIT_OK


def _cmd_compose(args, caps: Caps) -> int:
    left = parse_map(args.a).parsed
    right = parse_map(args.b).parsed
    if type(left) is not type(right):
        raise MapSyntaxError('the two maps live on different surfaces')
    result = compose_maps(left, right)
    _emit({'map': str(result)}, args.json, [str(result)])
    return EXIT_OK


def _cmd_order(args, caps: Caps) -> int:
    n = _order_of(_target(args), caps)
    _emit({'order': n}, args.json, [str(n)])
    return EXIT_OK


def _cmd_fixed_curve(args, caps: Caps) -> int:
    expr = _target(args)
    obj = expr.parsed
    if isinstance(obj, JonqElement):
        from .jonquieres import to_birmap
        obj = to_birmap(obj)
    if isinstance(obj, (BirMapP2, BirMapP1P1)):
        report = fixed_curve(obj)
        components = [{'factor': str(factor), 'multiplicity': mult,
                       'genus': component_genus(factor)}
                      for factor, mult in report.components]
        lines = [f"{c['factor']} (multiplicity {c['multiplicity']}, "
                 f"genus {c['genus']})" for c in components] or ['no fixed curve found']
        _emit({'components': components}, args.json, lines)
        return EXIT_OK
    locus = fixed_locus(obj, expr.surface)
    components = [{'kind': comp.kind, 'coords': list(comp.coords),
                   'equation': None if comp.equation is None else str(comp.equation),
                   'genus': comp.genus,
                   'j': None if comp.j is None else str(comp.j)}
                  for comp in locus]
    _emit({'components': components}, args.json, [repr(comp) for comp in locus])
    return EXIT_OK


def _cmd_root(args, caps: Caps) -> int:
    g = parse_polynomial(args.g, ('x',))
    found = root_search(g, args.n, degree_bound=caps.root_degree_bound)
    if found is None:
        raise CapExceeded(f'no seed found for degree bound {caps.root_degree_bound}')
    verified = jonq_order(found, cap=max(caps.order_cap, 2 * args.n + 1))
    _emit({'root': str(found), 'order': verified}, args.json,
          [str(found), f'order {verified}'])
    return EXIT_OK


def _cmd_power(args, caps: Caps) -> int:
    if args.k < 1:
        raise MapSyntaxError('the exponent must be a positive integer')
    expr = _target(args)
    result = _self_power(expr.parsed, args.k)
    _emit({'map': str(result)}, args.json, [str(result)])
    return EXIT_OK


def _parse_isometry(args, lattice: PicLattice) -> LatticeIsometry:
    if args.isometry is not None:
        try:
            text = Path(args.isometry).read_text()
        except OSError as err:
            raise MapSyntaxError(f'cannot read {args.isometry}: {err}') from err
    else:
        text = args.word
    stripped = text.strip()
    if stripped.startswith('['):
        try:
            matrix = json.loads(stripped)
        except json.JSONDecodeError as err:
            raise MapSyntaxError(f'bad matrix JSON: {err}') from err
        return LatticeIsometry(tuple(tuple(row) for row in matrix), lattice)
    return weyl_word(stripped, lattice)


def _cmd_picard(args, caps: Caps) -> int:
    lattice = PicLattice(args.r)
    iso = _parse_isometry(args, lattice)
    parts = orbits(iso, exceptional_classes(lattice))
    check = rank_one_orbit_check(iso)
    payload = {
        'r': args.r,
        'order': isometry_order(iso),
        'invariant_rank': invariant_rank(iso),
        'orbit_sizes': sorted(len(p) for p in parts),
        'check': check,
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _separation_values(report: ClassReport):
    raw = {}
    label = None
    for cert in report.certificates:
        if cert.get('checked'):
            if label is None:
                label = cert['invariant']
            for name, value in zip(cert['pair'], cert['values']):
                raw.setdefault(name, value)
    values = []
    for name, _obj, _verified in report.representatives:
        text = raw.get(name)
        if text is None:
            return None, None, raw
        try:
            values.append(float(Fraction(text)))
        except (ValueError, ZeroDivisionError):
            return None, None, raw
    return values, label, raw


def _cmd_report(args, caps: Caps) -> int:
    if args.order > caps.conductor_cap:
        raise CapExceeded(f'order {args.order} exceeds the conductor cap '
                          f'of {caps.conductor_cap}')
    report = classify_order(args.order, args.family_size, caps)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    json_path = out / 'report.json'
    json_path.write_text(json.dumps(report.as_dict(), indent=2) + '\n')
    values, label, raw = _separation_values(report)
    csv_path = out / 'representatives.csv'
    with csv_path.open('w', newline='') as handle:
        writer = csv.writer(handle)
        writer.writerow(['name', 'map', 'order', 'separation'])
        for name, obj, verified in report.representatives:
            writer.writerow([name, str(obj), verified, raw.get(name, '')])
    png_path = out / 'separation.png'
    names = [name for name, _obj, _verified in report.representatives]
    if values is None:
        values = [float(verified) for _name, _obj, verified in report.representatives]
        label = 'verified order'
    figures.separation_figure(names, values, label,
                              f'order {report.order}: {report.count} classes',
                              str(png_path))
    for path in (json_path, csv_path, png_path):
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='cremona',
        description='finite-order plane maps: class reports and invariants')
    parser.add_argument('--config', help='JSON file adjusting the caps')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('classify', help='class count and representatives for an order')
    p.add_argument('--order', type=int, required=True)
    p.add_argument('--family-size', type=int, default=3)
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser('invariants', help='conjugacy-invariant record of a map')
    p.add_argument('--map')
    p.add_argument('--surface')
    p.add_argument('--aut')
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser('compose', help='compose two maps (the second acts first)')
    p.add_argument('--a', required=True)
    p.add_argument('--b', required=True)
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=_cmd_compose)

    p = sub.add_parser('order', help='order of a map by iteration')
    p.add_argument('--map')
    p.add_argument('--surface')
    p.add_argument('--aut')
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=_cmd_order)

    p = sub.add_parser('fixed-curve', help='curves fixed pointwise by a map')
    p.add_argument('--map')
    p.add_argument('--surface')
    p.add_argument('--aut')
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=_cmd_fixed_curve)

    p = sub.add_parser('root', help='search a seed whose n-th power inverts the fibre')
    p.add_argument('--g', required=True, help='squarefree polynomial in x')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=_cmd_root)

    p = sub.add_parser('power', help='k-th power of a map')
    p.add_argument('--map')
    p.add_argument('--surface')
    p.add_argument('--aut')
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--json', action='store_true')
    p.set_defaults(handler=_cmd_power)

    p = sub.add_parser('picard', help='orbit report of a lattice isometry')
    p.add_argument('--r', type=int, required=True, choices=range(1, 9))
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--isometry', help='file with a JSON matrix or a Weyl word')
    group.add_argument('--word', help='inline Weyl word like "s0 s1 s2"')
    p.set_defaults(handler=_cmd_picard)

    p = sub.add_parser('report', help='classify and write JSON, CSV and a figure')
    p.add_argument('--order', type=int, required=True)
    p.add_argument('--family-size', type=int, default=3)
    p.add_argument('--out', required=True)
    p.set_defaults(handler=_cmd_report)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        caps = _load_caps(args.config)
        return args.handler(args, caps)
    except MapSyntaxError as err:
        print(f'parse error: {err}', file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as err:
        print(f'cap exceeded: {err}', file=sys.stderr)
        return EXIT_CAP
    except ValueError as err:
        print(f'error: {err}', file=sys.stderr)
        return EXIT_PARSE


if __name__ == '__main__':
    sys.exit(main())
