#!/usr/bin/env python3
"""
vopkit command line - gen | check | classical
Status lines go to stderr; stdout (or --out) carries only the emitted document
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

# Add project root to path for imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.cli.ledger import VerificationLedger
from src.core.autom import (ModifierPoly, exp_ad, literal_sigma_meixner_x, verify_closed_forms,
                            verify_intertwining)
from src.core.config import load_config
from src.core.diffop import DELTA, DINV, D, L, X, OpName, apply, build, compose
from src.core.errors import ClosedFormMismatch, InvalidSpec, VopkitError
from src.core.families import (FamilyKind, FamilySpec, PolyFamily, bispectral_operator,
                               charlier_operator, charlier_spec, classical_charlier,
                               classical_meixner, classical_meixner_spec, eigencheck,
                               expected_band_depth, generate, literal_meixner_spec,
                               lowering_check, meixner_operator, modifier_operator,
                               proportionality_scalar)
from src.core.polyalg import as_rational, falling_factorial, format_rational
from src.core.vorth import (charlier_band_coefficient, degeneracy_scan, maroni_check,
                            paper_coeff_charlier, recursion_table, verify_reconstruction)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

CHECK_ORDER = ('eigen', 'lowering', 'recursion', 'orthogonality', 'closed-forms', 'degeneracy')
INTERTWINING_DEGREE = 10


@dataclass
class RunConfig:
    command: str
    kind: str = None
    P: list = field(default_factory=list)
    a: str = None
    beta: str = None
    c: str = None
    nmax: int = None
    format: str = 'json'
    out: str = None
    checks: list = field(default_factory=list)
    input: str = None
    config: str = None

    @classmethod
    def from_args(cls, args):
        checks = list(getattr(args, 'names', None) or [])
        if getattr(args, 'checks', None):
            checks += [name for name in args.checks.split(',') if name.strip()]
        P = ModifierPoly.parse(args.P).to_strings() if args.P else []
        return cls(
            command=args.command,
            kind=args.kind,
            P=P,
            a=_canonical(args.a),
            beta=_canonical(args.beta),
            c=_canonical(args.c),
            nmax=args.nmax,
            format=args.format,
            out=args.out,
            checks=[name.strip() for name in checks],
            input=args.input,
            config=args.config,
        )

    def to_json(self):
        """Canonical form: sorted keys, rationals as 'num/den' strings"""
        doc = {
            'command': self.command, 'kind': self.kind, 'P': list(self.P), 'a': self.a,
            'beta': self.beta, 'c': self.c, 'nmax': self.nmax, 'format': self.format,
            'out': self.out, 'checks': list(self.checks), 'input': self.input, 'config': self.config,
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls(**json.loads(text))


def _canonical(value):
    return None if value is None else format_rational(value)


SIGNED_VALUE_FLAGS = ('--P', '--a', '--beta', '--c')


def attach_signed_values(argv):
    """Attach negative values to their flag: '--P -1/2' becomes '--P=-1/2'"""
    joined = []
    tokens = iter(argv)
    for token in tokens:
        if token in SIGNED_VALUE_FLAGS:
            value = next(tokens, None)
            if value is None:
                joined.append(token)
            elif len(value) > 1 and value[0] == '-' and value[1] in '0123456789./':
                joined.append(f"{token}={value}")
            else:
                joined.extend((token, value))
        else:
            joined.append(token)
    return joined


def build_parser():
    parser = argparse.ArgumentParser(
        prog='vopkit',
        description='Discrete vector orthogonal polynomials from automorphisms of difference operators',
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--kind', choices=[k.value for k in FamilyKind], help='family kind')
    common.add_argument('--P', help="coefficients beta_1,beta_2,... of P(X), e.g. '0,1/2'")
    common.add_argument('--a', help='Charlier parameter a (P = -aX)')
    common.add_argument('--beta', help='Meixner-type parameter beta')
    common.add_argument('--c', help='Meixner-type constant c, not 0 or 1')
    common.add_argument('--nmax', type=int, help='largest family index (default from config)')
    common.add_argument('--format', choices=['json', 'csv', 'text'], help='output format')
    common.add_argument('--out', help='write the document here instead of stdout')
    common.add_argument('--config', help='configuration file (overrides VOPKIT_CONFIG)')
    common.add_argument('--input', help='stored family document to check instead of generating')

    sub = parser.add_subparsers(dest='command', required=True)
    sub.add_parser('gen', parents=[common], help='generate a family')
    check = sub.add_parser('check', parents=[common], help='run verification suites')
    check.add_argument('names', nargs='*', help=f"checks: {', '.join(CHECK_ORDER)}, all")
    check.add_argument('--checks', help='comma-separated check selection')
    sub.add_parser('classical', parents=[common], help='compare against classical Charlier/Meixner')
    return parser


def resolve_spec(run, config):
    """FamilySpec from the flags; --a alone means the Charlier choice P = -aX"""
    nmax = run.nmax if run.nmax is not None else config['nmax']
    kind = FamilyKind(run.kind) if run.kind else FamilyKind.CHARLIER_APPELL

    if kind is FamilyKind.CHARLIER_APPELL:
        if run.beta is not None or run.c is not None:
            raise InvalidSpec("--beta and --c apply to meixner-type families only")
        if run.P:
            return FamilySpec(kind, ModifierPoly(tuple(run.P)), nmax=nmax)
        if run.a is not None:
            if as_rational(run.a) == 0:
                raise InvalidSpec("Charlier parameter a must be nonzero")
            return charlier_spec(run.a, nmax)
        raise InvalidSpec("charlier-appell needs --P or --a")

    if not run.P:
        raise InvalidSpec("meixner-type needs --P")
    if run.beta is None or run.c is None:
        raise InvalidSpec("meixner-type needs --beta and --c")
    return FamilySpec(kind, ModifierPoly(tuple(run.P)), beta=run.beta, c=run.c, nmax=nmax)


def resolve_checks(run):
    names = run.checks or ['all']
    selected = []
    for name in names:
        if name == 'all':
            selected.extend(CHECK_ORDER)
        elif name in CHECK_ORDER:
            selected.append(name)
        else:
            raise InvalidSpec(f"unknown check {name!r}; choose from {', '.join(CHECK_ORDER)}, all")
    # each selected check runs once, in canonical order
    return [name for name in CHECK_ORDER if name in selected]


def family_document(family, ledger):
    doc = family.to_json()
    doc['ledger'] = ledger.to_json()
    doc['constants'] = {k: ledger.constants[k] for k in sorted(ledger.constants)}
    return doc


def render(doc, fmt, table=None):
    if fmt == 'json':
        return json.dumps(doc, sort_keys=True, indent=2) + '\n'

    if fmt == 'csv':
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(['n', 'coefficients'])
        for n, coeffs in enumerate(doc['members']):
            writer.writerow([n, ' '.join(coeffs)])
        if table is not None:
            writer.writerow([])
            writer.writerow(table.csv_header())
            writer.writerows(table.csv_rows())
        if doc.get('ledger'):
            writer.writerow([])
            writer.writerow(['check', 'status', 'details'])
            writer.writerows([[e['name'], e['status'], e['details']] for e in doc['ledger']])
        return buffer.getvalue()

    lines = ['=' * 60, f"Family: {doc['spec']['kind']}  P = {doc['spec']['P']}", '=' * 60]
    for n, coeffs in enumerate(doc['members']):
        lines.append(f"P_{n}: {' '.join(coeffs)}")
    lines.append(f"eigenvalues: {' '.join(doc['eigenvalues'])}")
    if table is not None:
        lines.append('')
        lines.append('  '.join(table.csv_header()))
        lines.extend('  '.join(row) for row in table.csv_rows())
    for entry in doc.get('ledger', []):
        lines.append(f"[{entry['status']}] {entry['name']} {entry['details']}".rstrip())
    return '\n'.join(lines) + '\n'


def emit(text, out):
    if out:
        with open(out, 'w') as f:
            f.write(text)
        print(f"✅ Wrote {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


# ---- checks -------------------------------------------------------------

class _CheckRun:
    """Shared state for one `check` invocation; the recursion table is computed once"""

    def __init__(self, family, config, ledger):
        self.family = family
        self.spec = family.spec
        self.config = config
        self.ledger = ledger
        self._table = None

    @property
    def table(self):
        if self._table is None:
            self._table = recursion_table(self.family)
        return self._table

    def computed_table(self):
        return self._table

    def eigen(self):
        eigenvalues = eigencheck(self.family)
        slope = eigenvalues[1] if len(eigenvalues) > 1 else None
        self.ledger.constant('eigenvalueSlope', format_rational(slope) if slope is not None else None)
        self.ledger.passed_check('eigen', f"tilde L P_n = lambda_n P_n for n <= {self.family.nmax}")

        if slope is not None and slope < 0:
            published = '(1-c)n' if self.spec.kind is FamilyKind.MEIXNER_TYPE else 'n'
            self.ledger.discrepancy(
                'eigenvalue-sign', f"published eigenvalue {published}; computed lambda_n = {format_rational(slope)}*n")

    def lowering(self):
        report = lowering_check(self.family)
        self.ledger.passed_check('lowering', f"{report.operator} P_n = k_n P_(n-1) for 1 <= n <= {report.checked}")

        if self.spec.kind is FamilyKind.MEIXNER_TYPE:
            beta = self.spec.beta
            # the printed ordering (L + beta) Delta
            literal = compose(L + beta, DELTA)
            got = apply(literal, falling_factorial(2))
            want = falling_factorial(1).scale(2 * (2 + beta))
            if got != want:
                self.ledger.discrepancy(
                    'G-ordering', f"(x Nabla + beta) Delta sends (x)_2 to {got}, not 2(2+beta)(x)_1; "
                                  f"engine uses Delta (N + beta)")

    def recursion(self):
        table = self.table
        verify_reconstruction(self.family, table)
        expected = expected_band_depth(self.spec)
        self.ledger.constant('bandDepth', table.d_effective)
        self.ledger.passed_check('recursion', f"band depth {table.d_effective}, reconstruction exact")
        if table.d_effective != expected:
            self.ledger.discrepancy('band-depth', f"expected {expected}, observed {table.d_effective}")

        if self.spec.kind is FamilyKind.CHARLIER_APPELL:
            self._charlier_coefficients(table)

    def _charlier_coefficients(self, table):
        P = self.spec.P
        mismatched = []
        for n in range(len(table.rows)):
            for j in range(min(n, table.d) + 1):
                if table.gamma(n, j) != charlier_band_coefficient(P, n, j):
                    self.ledger.failed_check(
                        'recursion-closed-form', f"gamma_{j}({n}) = {table.gamma(n, j)}, closed form gives "
                                                 f"{charlier_band_coefficient(P, n, j)}")
                    return
                if j >= 1 and table.gamma(n, j) != paper_coeff_charlier(P, n, j):
                    mismatched.append((n, j))
        self.ledger.passed_check('recursion-closed-form', "gamma_0 = n - beta_1, gamma_j = -(n)_j (j beta_j + (j+1) beta_(j+1))")
        if mismatched:
            n, j = mismatched[0]
            self.ledger.discrepancy(
                'recursion-coefficient-sign',
                f"published (n)_j (j beta_j + (j+1) beta_(j+1)) has the opposite sign at {len(mismatched)} "
                f"entries, first gamma_{j}({n}); published gamma_0 = n omits -beta_1")

    def orthogonality(self):
        table = self.table
        d = max(table.d_effective, 1)
        limit = self.config.get('maroni_limit') or self.family.nmax
        limit = min(limit, self.family.nmax)
        degenerate = degeneracy_scan(self.family, table)
        if degenerate:
            limit = min(limit, degenerate[0][0])
        self.ledger.constant('maroniLimit', limit)

        report = maroni_check(self.family, d, limit)
        self.ledger.passed_check(
            'orthogonality', f"d={d}, m+n <= {limit}: {report.zero_checks} vanishing and "
                             f"{report.diagonal_checks} diagonal conditions")
        if report.printed_index_zeros:
            self.ledger.discrepancy(
                'maroni-nonvanishing-index',
                f"u_k(P_n P_(n(d+1)+k)) = 0 in {report.printed_index_zeros} of {report.printed_index_checks} "
                f"cases; the nonvanishing diagonal is m = nd + k")

    def closed_forms(self):
        max_order = self.config['max_order']
        P = self.spec.P
        if self.spec.kind is FamilyKind.CHARLIER_APPELL:
            reports = verify_closed_forms(P, max_order=max_order)
            generators = (('x', X), ('D', D), ('Dinv', DINV), ('Delta', DELTA), ('L', L))
        else:
            beta = self.spec.beta
            reports = verify_closed_forms(P, beta, max_order=max_order)
            generators = (('x', X), ('L', L), ('G', build(OpName.G, beta)))

        for report in reports:
            if not report.match:
                raise ClosedFormMismatch(report.name, report.closed_image, report.series_image)
        orders = {r.name: r.nilpotency_order for r in reports}
        self.ledger.constant('nilpotencyOrders', orders)

        P_op = modifier_operator(self.spec)
        verify_intertwining(P_op, generators, min(self.family.nmax, INTERTWINING_DEGREE), max_order)
        self.ledger.passed_check('closed-forms', f"series = closed form for {', '.join(orders)}; intertwining holds")

        if self.spec.kind is FamilyKind.CHARLIER_APPELL:
            # printed tilde L = x Nabla + P'(Delta) Delta is sigma^{-1}(L)
            printed = L + compose(P.derivative_at(DELTA), DELTA)
            if printed != self.family.tilde_L and printed == exp_ad(P.negated().at(DELTA), L, max_order):
                self.ledger.discrepancy(
                    'tilde-L-sigma-inverse', "x Nabla + P'(Delta) Delta equals sigma^-1(L); "
                                             "the eigen-operator is sigma(L) = x Nabla - P'(Delta) Delta")
        else:
            literal = literal_sigma_meixner_x(P, self.spec.beta)
            series = next(r.series_image for r in reports if r.name == 'x')
            if literal != series:
                self.ledger.discrepancy(
                    'sigma-x-literal', "x + R P'(G) - P''(G) G - P'(G)^2 G differs from the series; "
                                       "the series equals x + R P'(G) + P''(G) G + P'(G)^2 G")

    def degeneracy(self):
        if self.family.nmax < expected_band_depth(self.spec) + 2:
            found = degeneracy_scan(self.family)
        else:
            found = degeneracy_scan(self.family, self.table)
        self.ledger.constant('degeneracyIndices', [list(item) for item in found])
        if found:
            listed = ', '.join(f"gamma_{j}({n})" for n, j in found)
            self.ledger.passed_check('degeneracy', f"deepest band vanishes at {listed}")
        else:
            self.ledger.passed_check('degeneracy', 'deepest band coefficient nonzero for every n')


def run_checks(family, checks, config, ledger):
    runner = _CheckRun(family, config, ledger)
    for name in checks:
        try:
            getattr(runner, name.replace('-', '_'))()
        except VopkitError as e:
            ledger.failed_check(name, str(e))
    return runner


# ---- commands -------------------------------------------------------------

def cmd_gen(run, config):
    spec = resolve_spec(run, config)
    ledger = VerificationLedger()
    try:
        family = generate(spec, config['max_order'])
    except InvalidSpec:
        raise
    except VopkitError as e:
        ledger.failed_check('generate', str(e))
        ledger.print_summary()
        return EXIT_FAILED

    ledger.passed_check('generate', f"{family.nmax + 1} monic members")
    if len(family.eigenvalues) > 1:
        ledger.constant('eigenvalueSlope', format_rational(family.eigenvalues[1]))
    emit(render(family_document(family, ledger), run.format), run.out)
    return EXIT_OK


def load_family(path):
    with open(path, 'r', encoding='utf-8') as f:
        try:
            doc = json.load(f)
        except ValueError as e:
            # JSONDecodeError and UnicodeDecodeError
            raise InvalidSpec(f"{path} is not a family document: {e}") from e
    try:
        return PolyFamily.from_json(doc)
    except (KeyError, TypeError, AttributeError) as e:
        raise InvalidSpec(f"{path} is missing family fields: {e}") from e
    except ValueError as e:
        raise InvalidSpec(f"{path} has a malformed family field: {e}") from e


def cmd_check(run, config):
    checks = resolve_checks(run)
    ledger = VerificationLedger()
    if run.input:
        family = load_family(run.input)
    else:
        spec = resolve_spec(run, config)
        try:
            family = generate(spec, config['max_order'])
        except InvalidSpec:
            raise
        except VopkitError as e:
            ledger.failed_check('generate', str(e))
            ledger.print_summary()
            return EXIT_FAILED

    runner = run_checks(family, checks, config, ledger)
    ledger.print_summary()
    doc = family_document(family, ledger)
    table = runner.computed_table()
    if table is not None:
        doc['recursion'] = table.to_json()
    emit(render(doc, run.format, table), run.out)
    return EXIT_OK if ledger.passed else EXIT_FAILED


def _compare_members(family, oracle, ledger, name):
    for n, member in enumerate(family.members):
        expected = oracle(n)
        if member != expected:
            ledger.failed_check(name, f"first mismatch at n={n}: engine {member}, oracle {expected}")
            return False
    ledger.passed_check(name, f"members agree with the hypergeometric sum for n <= {family.nmax}")
    return True


def _classical_equation(family, operator, slope, ledger, name):
    """The classical operator has eigenvalue slope * n on the family"""
    for n, member in enumerate(family.members):
        residual = apply(operator, member) - member.scale(slope * n)
        if not residual.is_zero():
            ledger.failed_check(name, f"n={n}: residual {residual}")
            return
    ledger.passed_check(name, f"classical difference equation holds with eigenvalue {format_rational(slope)}*n")


def cmd_classical(run, config):
    nmax = run.nmax if run.nmax is not None else config['nmax']
    kind = FamilyKind(run.kind) if run.kind else FamilyKind.CHARLIER_APPELL
    ledger = VerificationLedger()

    if kind is FamilyKind.CHARLIER_APPELL:
        if run.a is None:
            raise InvalidSpec("classical charlier needs --a")
        a = as_rational(run.a)
        if a == 0:
            raise InvalidSpec("Charlier parameter a must be nonzero")
        family = generate(charlier_spec(a, nmax), config['max_order'])
        _compare_members(family, lambda n: classical_charlier(a, n), ledger, 'charlier-oracle')
        operator = charlier_operator(a)
        if family.tilde_L == operator:
            ledger.passed_check('charlier-operator', 'tilde L = a Delta + x Nabla')
        else:
            ledger.failed_check('charlier-operator', f"tilde L = {family.tilde_L}")
        _classical_equation(family, operator, -1, ledger, 'charlier-equation')
        if family.eigenvalues[1:2] and family.eigenvalues[1] < 0:
            ledger.discrepancy('eigenvalue-sign', "published eigenvalue n; computed -n")
    else:
        if run.beta is None or run.c is None:
            raise InvalidSpec("classical meixner needs --beta and --c")
        beta, c = as_rational(run.beta), as_rational(run.c)
        operator = meixner_operator(beta, c)

        literal = bispectral_operator(literal_meixner_spec(beta, c, nmax), config['max_order'])
        scalar = proportionality_scalar(literal, operator)
        ledger.constant('literalProportionalityScalar', format_rational(scalar) if scalar is not None else None)
        if scalar is None:
            ledger.discrepancy('meixner-normalization',
                               "alpha = c/(1-c) with parameter beta is not proportional to c(x+beta)Delta + x Nabla; "
                               "alpha = -c/(1-c) with parameter beta-1 gives it exactly")
        else:
            ledger.passed_check('meixner-normalization', f"literal tilde L = {format_rational(scalar)} * classical")

        family = generate(classical_meixner_spec(beta, c, nmax), config['max_order'])
        scalar = proportionality_scalar(family.tilde_L, operator)
        ledger.constant('proportionalityScalar', format_rational(scalar) if scalar is not None else None)
        if scalar is None:
            ledger.failed_check('meixner-operator', f"tilde L = {family.tilde_L}")
        else:
            ledger.passed_check('meixner-operator', f"tilde L = {format_rational(scalar)} * (c(x+beta)Delta + x Nabla)")
        _compare_members(family, lambda n: classical_meixner(beta, c, n), ledger, 'meixner-oracle')
        _classical_equation(family, operator, c - 1, ledger, 'meixner-equation')

    ledger.print_summary()
    emit(render(family_document(family, ledger), run.format), run.out)
    return EXIT_OK if ledger.passed else EXIT_FAILED


COMMANDS = {'gen': cmd_gen, 'check': cmd_check, 'classical': cmd_classical}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(attach_signed_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        run = RunConfig.from_args(args)
        config = load_config(run.config)
        if run.format is None:
            run.format = config['format']
        return COMMANDS[run.command](run, config)
    except InvalidSpec as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except VopkitError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_FAILED
    except OSError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
