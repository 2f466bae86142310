"""Command line front end: ``occ verify``, ``occ clan``, ``occ gb`` and ``occ export``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import braden, clans, nilorbit, slices
from .groebner import (Ideal, format_ideal, groebner_basis, ideal_contains, ideal_dimension,
                       ideal_equal, read_ideal, s_polynomial_certificate, apply_map)
from .linalg import rank
from .polycore import GREVLEX, LEX, MonomialOrder, PolyMatrix, PolynomialSyntaxError

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

CLAN_A_BIG = "(12324341)"
CLAN_A_SMALL = slices.MAIN_CLAN


class ComputationError(RuntimeError):
    pass


@dataclass
class Options:
    char: int = 101
    order: MonomialOrder = GREVLEX
    seed: int = 0
    trials: int = 8
    skip_conormal: bool = False


@dataclass
class Claim:
    id: str
    description: str
    location: str
    run: Callable[[Options], tuple[bool | None, str]]


# --------------------------------------------------------------------------
# claims
# --------------------------------------------------------------------------

def _pair(i, j):
    return slices.RankCondition("pair", i, j)


def _corners():
    return [slices.RankCondition("corner-NW"), slices.RankCondition("corner-SW")]


def _equations_equal(char: int, order: MonomialOrder) -> tuple[bool, str]:
    j1, j2 = slices.ideal_J1(char), slices.ideal_Y(char)
    eq = ideal_equal(j1, j2, order)
    return eq, (f"J1 == J2: {str(eq).lower()} (char {char}, {order}); "
                f"J1 has {len(j1)} generators, J2 has {len(j2)}")


def _pair_45(opts: Options) -> tuple[bool, str]:
    chart = slices.slice_chart(slices.MAIN_CLAN, opts.char)
    base = _corners() + [_pair(2, 4), _pair(3, 6)]
    big = slices.wyser_yong_ideal(chart, base)
    small = slices.wyser_yong_ideal(chart, [_pair(4, 5)])
    alone = ideal_contains(slices.wyser_yong_ideal(chart, [_pair(3, 6)]), small)
    ok = ideal_contains(big, small)
    return ok, (f"pair(4,5) inside corners + pair(2,4) + pair(3,6): {ok}; "
                f"inside pair(3,6) alone: {alone}")


def _pair_24(opts: Options) -> tuple[bool, str]:
    chart = slices.slice_chart(slices.MAIN_CLAN, opts.char)
    lhs = slices.wyser_yong_ideal(chart, _corners() + [_pair(2, 4)])
    a1, _ = slices.y_matrices(chart.ring)
    ok = ideal_equal(lhs, Ideal(chart.ring, a1.minors(2)))
    return ok, f"corners + pair(2,4) equals the 2x2 minors of the first 4x2 matrix: {ok}"


def _golden_chart(opts: Options) -> tuple[bool, str]:
    from .linalg import ExactMatrix
    g_expected = ExactMatrix([
        [1, 0, 0, -1, 0, 0, 0, 0], [0, 1, -1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, -1], [0, 0, 0, 0, 0, 1, -1, 0],
        [1, 0, 0, 1, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 1, 0], [0, 0, 0, 0, 1, 0, 0, 1]])
    chart = slices.slice_chart(slices.MAIN_CLAN, 0)
    expected = PolyMatrix.parse(chart.ring, [
        [1, 0, 0, -1, 0, 0, 0, 0], [0, 1, -1, 0, 0, 0, 0, 0],
        ["x_2", "x_1", "x_1", "x_2", 1, 0, 0, -1], ["x_4", "x_3", "x_3", "x_4", 0, 1, -1, 0],
        [1, 0, 0, 1, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0, 0, 0],
        ["y_1", "y_2", "-y_2", "-y_1", 0, 1, 1, 0], ["y_3", "y_4", "-y_4", "-y_3", 1, 0, 0, 1]])
    g_ok = clans.clan_representative(chart.clan) == g_expected
    m_ok = chart.matrix == expected
    return g_ok and m_ok, f"representative matches: {g_ok}; slice matrix matches: {m_ok}"


def _chart_dim(opts: Options) -> tuple[bool, str]:
    c = clans.parse_clan(slices.MAIN_CLAN)
    chart = slices.slice_chart(c)
    codim = clans.flag_dimension(c.n) - clans.orbit_dimension(c)
    ok = chart.ring.nvars == codim == 8 and chart.at_origin() == chart.representative
    return ok, f"{chart.ring.nvars} slice coordinates, orbit codimension {codim}"


def _model_phi(opts: Options) -> tuple[bool, str]:
    ok = ideal_equal(apply_map(slices.phi_map(opts.char), slices.ideal_Z(opts.char)),
                     slices.ideal_Y(opts.char))
    return ok, f"phi(Z) == Y: {ok}"


def _model_dim(opts: Options) -> tuple[bool, str]:
    d = ideal_dimension(slices.ideal_Y(opts.char))
    return d == 4, f"dim Y = {d}"


def _model_alt(opts: Options) -> tuple[bool, str]:
    ok = ideal_equal(slices.ideal_Y(opts.char), slices.ideal_Y_alternate(opts.char))
    return ok, f"alternate generating set gives the same ideal: {ok}"


def _model_invariance(opts: Options) -> tuple[bool, str]:
    return braden.check_invariance(opts.char)


def _model_dense(opts: Options) -> tuple[bool, str]:
    dims = {e: braden.orbit_tangent_dim(braden.v_eps(e)) for e in (1, 2, 3)}
    span_ok = rank(braden.tangent_matrix(braden.v_eps(1)) + braden.TANGENT_SPACE_V1) == 4
    ok = all(d == 4 for d in dims.values()) and span_ok
    return ok, f"orbit tangent dimensions at v_eps: {dims}; span matches the expected space: {span_ok}"


def _braden_check(name: str):
    def run(opts: Options) -> tuple[bool | None, str]:
        if name == "xi-annihilates-tangent":
            return braden.check_annihilates_tangent()
        if name == "dual-orbit-dimension":
            return braden.check_dual_orbit()
        if opts.skip_conormal:
            return None, "skipped (--skip-conormal)"
        return braden.check_conormal_fiber(opts.char if opts.char else 101)
    return run


def _dims(pairs: list[tuple[str, int]]):
    def run(opts: Options) -> tuple[bool, str]:
        got = {s: clans.orbit_dimension(clans.parse_clan(s)) for s, _ in pairs}
        ok = all(got[s] == d for s, d in pairs)
        return ok, ", ".join(f"{s}: {got[s]}" for s, _ in pairs)
    return run


def _tableau(clan_text: str, expected: str):
    def run(opts: Options) -> tuple[bool, str]:
        c = clans.parse_clan(clan_text)
        trials = nilorbit.sample_tableaux(c, opts.trials, opts.seed)
        distinct = sorted({t.format() for t in trials})
        if len(distinct) != 1:
            raise ComputationError(f"genericity not reached for {clan_text}: trials gave {distinct}")
        got = trials[0]
        ok = got == nilorbit.SignedTableau.parse(expected)
        return ok, (f"{clan_text}: {got} ({opts.trials}/{opts.trials} trials agree, "
                    f"sign read at the kernel end of each chain)")
    return run


def _dominance(opts: Options) -> tuple[bool, str]:
    a = nilorbit.moment_map_image(clans.parse_clan(CLAN_A_BIG), opts.trials, opts.seed)
    b = nilorbit.moment_map_image(clans.parse_clan(CLAN_A_SMALL), opts.trials, opts.seed)
    ok = a != b and nilorbit.dominates(a.shape, b.shape) and a.shape != b.shape
    return ok, f"{a} strictly dominates {b}: {ok}"


def _induced_text(opts: Options) -> tuple[bool, str]:
    big = clans.induce_clan(2, clans.parse_clan(CLAN_A_BIG), 2)
    small = clans.induce_clan(2, clans.parse_clan(CLAN_A_SMALL), 2)
    got = (clans.format_clan(big, "signed"), clans.format_clan(small, "signed"))
    ok = got == ("1^+2^+(34546563)7^-8^-", "1^+2^+(34435665)7^-8^-")
    inv = clans.clan_to_involution(big).format(with_signs=True)
    return ok, f"induced clans {got[0]} and {got[1]}; involution {inv}"


def _induced_equal(opts: Options) -> tuple[bool, str]:
    res = []
    for s in (CLAN_A_BIG, CLAN_A_SMALL):
        c = clans.induce_clan(2, clans.parse_clan(s), 2)
        res.append(_tableau(clans.format_clan(c), "4+ 4+ 2+ 2+")(opts))
    ok = all(r[0] for r in res)
    return ok, "; ".join(r[1] for r in res)


def _ks_check(opts: Options) -> tuple[bool, str]:
    ok = slices.ks_embedding_check(opts.char)
    literal = slices.ks_embedding_check(opts.char, literal=True)
    return ok, f"pullbacks of the Z_KS generators lie in I(Z): {ok} (determinant-only form: {literal})"


def _ks_dim(opts: Options) -> tuple[bool, str]:
    d = ideal_dimension(slices.ideal_ZKS(opts.char))
    d_lit = ideal_dimension(slices.ideal_ZKS_literal(opts.char))
    return d == 8, (f"dim Z_KS = {d} in 16 variables (det A_i plus entries of A_i A_(i+1)); "
                    f"the determinant-only form det A_i, det(A_i A_(i+1)) has dimension {d_lit}")


def _certificates(opts: Options) -> tuple[bool, str]:
    bad = []
    for name, ideal in (("J1", slices.ideal_J1(opts.char)), ("Y", slices.ideal_Y(opts.char)),
                        ("Z", slices.ideal_Z(opts.char)), ("Z_KS", slices.ideal_ZKS(opts.char))):
        if s_polynomial_certificate(ideal, opts.order):
            bad.append(name)
    return not bad, "every S-polynomial reduces to zero" if not bad else f"failing: {bad}"


CLAIMS: dict[str, list[Claim]] = {
    "equations": [
        Claim("equations.j1-equals-j2", "rank conditions on the slice generate the ideal of Y",
              "slice equations", lambda o: _equations_equal(o.char, o.order)),
        Claim("equations.j1-equals-j2-rational", "same equality over the rationals",
              "slice equations", lambda o: _equations_equal(0, o.order)),
        Claim("equations.pair-2-4", "corners with pair (2,4) give the minors of the first matrix",
              "slice equations", _pair_24),
        Claim("equations.pair-4-5", "pair (4,5) is implied by corners, pair (2,4) and pair (3,6)",
              "slice equations", _pair_45),
        Claim("equations.certificates", "Buchberger certificates for the computed bases",
              "slice equations", _certificates),
    ],
    "chart": [
        Claim("chart.golden", "representative and slice matrix reproduce the published matrices",
              "slice chart", _golden_chart),
        Claim("chart.dimension", "slice dimension equals orbit codimension", "slice chart", _chart_dim),
    ],
    "model": [
        Claim("model.phi", "the linear map phi carries Z onto Y", "model variety", _model_phi),
        Claim("model.dimension", "Y is four-dimensional", "model variety", _model_dim),
        Claim("model.alternate", "alternate equations define the same ideal", "model variety", _model_alt),
        Claim("model.invariance", "Lie(H) preserves the ideal of Z", "model variety", _model_invariance),
        Claim("model.dense-orbit", "H.v_eps has a 4-dimensional tangent space", "model variety", _model_dense),
    ],
    "microlocal": [
        Claim("microlocal.xi-annihilates-tangent", "xi is conormal at v_eps for every eps",
              "microlocal hypothesis", _braden_check("xi-annihilates-tangent")),
        Claim("microlocal.dual-orbit", "H.xi has dimension 7, stabilizer dimension 1",
              "microlocal hypothesis", _braden_check("dual-orbit-dimension")),
        Claim("microlocal.conormal-fiber", "conormal closure meets the zero fiber in dimension 7",
              "microlocal hypothesis", _braden_check("conormal")),
    ],
    "orbits-44": [
        Claim("orbits-44.dimensions", "orbit dimensions 24 and 20",
              "p = q = 4", _dims([(CLAN_A_BIG, 24), (CLAN_A_SMALL, 20)])),
        Claim("orbits-44.tableau-big", "moment map image of the 24-dimensional orbit",
              "p = q = 4", _tableau(CLAN_A_BIG, "3+ 3- 1+ 1-")),
        Claim("orbits-44.tableau-small", "moment map image of the 20-dimensional orbit",
              "p = q = 4", _tableau(CLAN_A_SMALL, "2+ 2+ 2- 2-")),
        Claim("orbits-44.dominance", "the two images differ and are strictly ordered",
              "p = q = 4", _dominance),
    ],
    "orbits-66": [
        Claim("orbits-66.clans", "padding by two + and two - symbols", "p = q = 6", _induced_text),
        Claim("orbits-66.dimensions", "orbit dimensions 42 and 38", "p = q = 6",
              _dims([("++12324341--", 42), ("++12213443--", 38)])),
        Claim("orbits-66.tableaux", "both moment map images are 4+ 4+ 2+ 2+", "p = q = 6", _induced_equal),
    ],
    "ks-embedding": [
        Claim("ks-embedding.check", "Z maps into the Kashiwara-Saito variety", "embedding", _ks_check),
        Claim("ks-embedding.dimension", "the Kashiwara-Saito variety is 8-dimensional", "embedding", _ks_dim),
    ],
}
TARGETS = list(CLAIMS) + ["all"]


def run_claims(target: str, opts: Options) -> dict:
    chosen = [c for t, cs in CLAIMS.items() if target in (t, "all") for c in cs]
    out = []
    error = None
    for claim in chosen:
        start = time.perf_counter()
        try:
            ok, detail = claim.run(opts)
        except (ComputationError, nilorbit.GenericityError) as exc:
            ok, detail, error = False, f"computational error: {exc}", exc
        except Exception as exc:  # reported, and turned into exit code 2
            ok, detail, error = False, f"computational error: {exc!r}", exc
        out.append({"id": claim.id, "description": claim.description, "location": claim.location,
                    "pass": ok, "detail": detail,
                    "elapsed_ms": int((time.perf_counter() - start) * 1000)})
    report = {
        "schema": SCHEMA,
        "target": target,
        "options": {"char": opts.char, "order": str(opts.order), "seed": opts.seed, "trials": opts.trials},
        "sign_convention": nilorbit.SIGN_CONVENTION,
        "note": braden.BradenReport().note,
        "claims": sorted(out, key=lambda c: c["id"]),
        "pass": all(c["pass"] is not False for c in out),
    }
    report["_error"] = error is not None
    return report


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _char(text: str) -> int:
    try:
        c = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("characteristic must be 0 or a prime") from None
    from .polycore import Field
    try:
        Field(c)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return c


def _order(text: str) -> MonomialOrder:
    return {"grevlex": GREVLEX, "lex": LEX}[text]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="occ", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, char_default: int | None):
        p.add_argument("--char", type=_char, default=char_default,
                       help="0 or a prime" + (f" (default {char_default})" if char_default else ""))
        p.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    v = sub.add_parser("verify", help="run verification claims")
    common(v, 101)
    v.add_argument("target", choices=TARGETS)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=8)
    v.add_argument("--skip-conormal", action="store_true")

    c = sub.add_parser("clan", help="clan utilities")
    c.add_argument("action", choices=["info", "moment-map", "induce"])
    c.add_argument("clan")
    c.add_argument("-p", type=int)
    c.add_argument("-q", type=int)
    c.add_argument("--plus", type=int, default=0)
    c.add_argument("--minus", type=int, default=0)
    c.add_argument("--seed", type=int)
    c.add_argument("--trials", type=int, default=8)
    c.add_argument("--json", action="store_true")

    g = sub.add_parser("gb", help="reduced Groebner basis of an ideal file")
    common(g, None)
    g.add_argument("file")
    g.add_argument("--equal", metavar="OTHER", help="compare with another ideal file")
    g.add_argument("--dim", action="store_true", help="print the Krull dimension")

    e = sub.add_parser("export", help="write a named ideal in the ideal file format")
    e.add_argument("name", choices=["J1", "J2", "Y", "Z", "ZKS"])
    e.add_argument("--char", type=_char, default=101)
    return parser


def _cmd_verify(args) -> int:
    opts = Options(char=args.char, order=_order(args.order), seed=args.seed, trials=args.trials,
                   skip_conormal=args.skip_conormal)
    report = run_claims(args.target, opts)
    had_error = report.pop("_error")
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for c in report["claims"]:
            mark = {True: "PASS", False: "FAIL", None: "SKIP"}[c["pass"]]
            print(f"[{mark}] {c['id']}: {c['detail']}")
        print(f"overall: {'PASS' if report['pass'] else 'FAIL'}")
    if had_error:
        return EXIT_ERROR
    return EXIT_OK if report["pass"] else EXIT_FAIL


def _cmd_clan(args) -> int:
    c = clans.parse_clan(args.clan, args.p, args.q)
    if args.action == "info":
        inv = clans.clan_to_involution(c)
        g = clans.clan_representative(c)
        data = {"clan": clans.format_clan(c), "p": c.p, "q": c.q,
                "dimension": clans.orbit_dimension(c, g),
                "involution": {"pairs": [list(t) for t in inv.transpositions],
                               "signs": {str(k): s for k, s in inv.signs}},
                "representative": [[str(x) for x in r] for r in g.rows]}
        if args.json:
            print(json.dumps(data, indent=2))
        else:
            print(f"clan: {data['clan']}  (p={c.p}, q={c.q})")
            print(f"dimension: {data['dimension']}")
            print(f"involution: {inv.format(with_signs=True)}")
            print("representative:")
            print(g)
        return EXIT_OK
    if args.action == "induce":
        d = clans.induce_clan(args.plus, c, args.minus)
        text = clans.format_clan(d, "signed")
        print(json.dumps({"clan": text, "p": d.p, "q": d.q}) if args.json else text)
        return EXIT_OK
    if args.seed is None:
        print("error: --seed is required for moment-map", file=sys.stderr)
        return EXIT_ERROR
    t = nilorbit.moment_map_image(c, args.trials, args.seed)
    print(json.dumps(t.as_dict()) if args.json else t.format())
    return EXIT_OK


def _load(path: str, char: int | None, order: MonomialOrder) -> Ideal:
    ideal = read_ideal(Path(path))
    ring = ideal.ring
    if char is not None and char != ring.characteristic:
        ring = ring.with_field(char)
    if order != ring.order:
        from dataclasses import replace
        ring = replace(ring, order=order)
    if ring != ideal.ring:
        ideal = Ideal(ring, [g.change_ring(ring) for g in ideal.generators])
    return ideal


def _cmd_gb(args) -> int:
    order = _order(args.order)
    ideal = _load(args.file, args.char, order)
    out: dict = {}
    if args.equal:
        other = _load(args.equal, ideal.ring.characteristic, order)
        if other.ring != ideal.ring:
            print("error: the two files use different variables", file=sys.stderr)
            return EXIT_ERROR
        out["equal"] = ideal_equal(ideal, other)
    if args.dim:
        out["dimension"] = ideal_dimension(ideal)
    if not out:
        out["basis"] = [g.format() for g in groebner_basis(ideal)]
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        if "basis" in out:
            print("\n".join(out["basis"]))
        if "equal" in out:
            print(str(out["equal"]).lower())
        if "dimension" in out:
            print(out["dimension"])
    return EXIT_OK


def _cmd_export(args) -> int:
    makers = {"J1": slices.ideal_J1, "J2": slices.ideal_Y, "Y": slices.ideal_Y,
              "Z": slices.ideal_Z, "ZKS": slices.ideal_ZKS}
    sys.stdout.write(format_ideal(makers[args.name](args.char), comment=f"ideal {args.name}"))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"verify": _cmd_verify, "clan": _cmd_clan, "gb": _cmd_gb, "export": _cmd_export}
    try:
        return handlers[args.command](args)
    except (clans.ClanError, PolynomialSyntaxError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except nilorbit.GenericityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
