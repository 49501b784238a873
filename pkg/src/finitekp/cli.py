"""Command-line front end: energy/length sweeps and band tables as CSV.

Flags take laboratory units (eV, nm) unless ``--model-units`` is given;
values are converted once here and the library sees model units only.
Exit codes: 0 success, 1 domain or solver failure, 2 usage error.
"""
import argparse
import csv
import sys

import numpy as np

from . import selfcheck, units
from .dispersion import (DiracCombParams, XI_STEPS, band_structure,
                         comb_band_structure, continuum_dispersion)
from .errors import BracketError, DomainError, ResolutionError
from .kernel import ModelParams
from .transport import (resistivity_limit, resistivity_n, transmission_limit,
                        transmission_n)


def fmt(x) -> str:
    """17 significant digits; infinities as ``inf``/``-inf``."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_table(header, rows, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def _n_list(text):
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("cell counts must be positive integers")
    return values


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


class _Energies:
    def __init__(self, model_units):
        self.model_units = model_units

    def energy(self, x):
        return x if self.model_units else units.ev_to_model(x)

    def length(self, x):
        return x if self.model_units else units.nm_to_model(x)


def _model_flags(p):
    p.add_argument("--v-ev", type=float, default=0.5, help="barrier height [eV]")
    p.add_argument("--gamma", type=float, default=0.1, help="barrier/well width ratio")
    p.add_argument("--l-nm", type=float, default=500.0, help="device length [nm]")
    p.add_argument("--n", type=_n_list, default=[50], help="cell counts, comma separated")


def _sweep_flags(p, emax=1.0):
    p.add_argument("--emin-ev", type=float, default=0.001)
    p.add_argument("--emax-ev", type=float, default=emax)
    p.add_argument("--steps", type=_positive_int, default=2000)


def _common_flags(p):
    p.add_argument("--model-units", action="store_true",
                   help="read energies and lengths in model units (no conversion)")
    p.add_argument("--output", default="-", help="CSV path (default stdout)")


def _band_flags(p):
    p.add_argument("--max-bands", type=_positive_int, default=None)
    p.add_argument("--xi-steps", type=int, default=XI_STEPS)


def build_parser():
    parser = argparse.ArgumentParser(prog="finitekp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transmit", help="S_N and its continuum limit versus energy")
    _model_flags(p)
    _sweep_flags(p)
    _common_flags(p)

    p = sub.add_parser("resist", help="Landauer resistivity versus energy or length")
    _model_flags(p)
    _sweep_flags(p)
    p.add_argument("--sweep", choices=("energy", "length"), default="energy")
    p.add_argument("--e-ev", type=float, default=None, help="fixed energy for a length sweep")
    p.add_argument("--e-over-eo", type=float, default=None,
                   help="fixed energy as a multiple of E_o for a length sweep")
    p.add_argument("--lmin-nm", type=float, default=200.0)
    p.add_argument("--lmax-nm", type=float, default=800.0)
    _common_flags(p)

    p = sub.add_parser("bands", help="band structure E(xi) of the N-cell chain")
    _model_flags(p)
    p.add_argument("--emax-ev", type=float, default=1.0)
    _band_flags(p)
    _common_flags(p)

    p = sub.add_parser("comb", help="band structure of the Dirac comb")
    p.add_argument("--p-strength", type=float, default=1.5)
    p.add_argument("--delta", type=float, default=10.0, help="comb spacing [nm]")
    p.add_argument("--emax-ev", type=float, default=1.0)
    _band_flags(p)
    _common_flags(p)

    sub.add_parser("selfcheck", help="run the embedded oracle suites")
    return parser


def _energy_grid(args, conv):
    if args.steps > 1 and not args.emax_ev > args.emin_ev:
        raise _Usage("--emax-ev must exceed --emin-ev")
    e = conv.energy(np.linspace(args.emin_ev, args.emax_ev, args.steps))
    if not e[0] > 0:
        raise DomainError("--emin-ev must be > 0")
    return e


class _Usage(Exception):
    pass


def cmd_transmit(args, conv):
    v, l = conv.energy(args.v_ev), conv.length(args.l_nm)
    e = _energy_grid(args, conv)
    params = [ModelParams(v, args.gamma, l, n) for n in args.n]
    ts = [transmission_n(e, p) for p in params]
    bar = transmission_limit(e, args.gamma, v, l)
    header = (["E_eV", "E_model"] + [f"S_N{n}" for n in args.n]
              + [f"log10_S_N{n}" for n in args.n] + ["S_bar", "log10_S_bar"])
    cols = ([units.model_to_ev(e), e] + [t.s for t in ts] + [t.log10_s for t in ts]
            + [bar.s, bar.log10_s])
    return header, zip(*cols)


def cmd_resist(args, conv):
    v = conv.energy(args.v_ev)
    e_o = args.gamma * v / (1.0 + args.gamma)
    if args.sweep == "energy":
        l = conv.length(args.l_nm)
        e = _energy_grid(args, conv)
        lead = [units.model_to_ev(e), e]
        lead_names = ["E_eV", "E_model"]
        ts = [transmission_n(e, ModelParams(v, args.gamma, l, n)) for n in args.n]
        rs = [resistivity_n(e, ModelParams(v, args.gamma, l, n)) for n in args.n]
        tb = transmission_limit(e, args.gamma, v, l)
        rb = resistivity_limit(e, args.gamma, v, l)
    else:
        if (args.e_ev is None) == (args.e_over_eo is None):
            raise _Usage("a length sweep needs exactly one of --e-ev or --e-over-eo")
        if args.steps > 1 and not args.lmax_nm > args.lmin_nm:
            raise _Usage("--lmax-nm must exceed --lmin-nm")
        e = conv.energy(args.e_ev) if args.e_ev is not None else args.e_over_eo * e_o
        ls = conv.length(np.linspace(args.lmin_nm, args.lmax_nm, args.steps))
        lead = [units.model_to_nm(ls), ls]
        lead_names = ["L_nm", "L_model"]
        ts, rs = [], []
        for n in args.n:
            pts = [ModelParams(v, args.gamma, l, n) for l in ls]
            ts.append(_stack([transmission_n(e, p) for p in pts]))
            rs.append(_stack([resistivity_n(e, p) for p in pts]))
        tb = _stack([transmission_limit(e, args.gamma, v, l) for l in ls])
        rb = _stack([resistivity_limit(e, args.gamma, v, l) for l in ls])
    header = list(lead_names)
    cols = list(lead)
    for n, t, r in zip(args.n, ts, rs):
        header += [f"S_N{n}", f"rho_N{n}", f"log10_rho_N{n}"]
        cols += [t.s, r.rho, r.log10_rho]
    header += ["S_bar", "rho_bar", "log10_rho_bar"]
    cols += [tb.s, rb.rho, rb.log10_rho]
    return header, zip(*cols)


def _stack(results):
    return type(results[0])(*(np.array(col) for col in zip(*results)))


def _band_rows(structure, e_o, lead=()):
    for band in structure.bands:
        cont = continuum_dispersion(band.xi_extended, e_o)
        for xi, e, ec in zip(band.xi_extended, band.e_samples, cont):
            yield (*lead, band.index, xi, e, units.model_to_ev(e), ec)


BAND_HEADER = ["band_index", "xi", "E_model", "E_eV", "E_continuum"]


def cmd_bands(args, conv):
    v, l = conv.energy(args.v_ev), conv.length(args.l_nm)
    e_max = conv.energy(args.emax_ev)
    several = len(args.n) > 1
    rows = []
    for n in args.n:
        p = ModelParams(v, args.gamma, l, n)
        bs = band_structure(p, e_max, xi_steps=args.xi_steps, max_bands=args.max_bands)
        rows.extend(_band_rows(bs, p.e_o, (n,) if several else ()))
    return (["N"] if several else []) + BAND_HEADER, rows


def cmd_comb(args, conv):
    d = DiracCombParams(args.p_strength, conv.length(args.delta))
    bs = comb_band_structure(d, conv.energy(args.emax_ev), xi_steps=args.xi_steps,
                             max_bands=args.max_bands)
    return BAND_HEADER, list(_band_rows(bs, 0.0))


COMMANDS = {"transmit": cmd_transmit, "resist": cmd_resist,
            "bands": cmd_bands, "comb": cmd_comb}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "selfcheck":
        return selfcheck.run_all()
    if getattr(args, "xi_steps", 2) < 2:
        parser.error("--xi-steps must be >= 2")
    conv = _Energies(args.model_units)
    try:
        header, rows = COMMANDS[args.command](args, conv)
        rows = list(rows)
    except _Usage as exc:
        parser.error(str(exc))
    except (DomainError, ResolutionError, BracketError) as exc:
        print(f"finitekp {args.command}: {exc}", file=sys.stderr)
        return 1
    if args.output == "-":
        write_table(header, rows, sys.stdout)
    else:
        with open(args.output, "w", newline="") as fh:
            write_table(header, rows, fh)
    return 0


if __name__ == "__main__":
    sys.exit(main())
