"""Command-line front end.

Exit codes: 0 success, 1 a verification suite found failures, 2 bad
arguments, 3 a truncated result did not stabilize (or a Fock window was too
small).
"""

from __future__ import annotations

import json
import sys

import click

from .expansions import decompose_one_param, schur_expand
from .fockspace import WindowError
from .grothendieck import TruncationError, default_cutoff, flagged_G, jt_G_raw, jt_g, stabilize
from .partitions import Partition, parse_partition
from .polynomial import Poly, TruncSeries
from .verify import SUITES, run

EXIT_VERIFY = 1
EXIT_TRUNCATION = 3


class ShapeType(click.ParamType):
    name = "shape"

    def convert(self, value, param, ctx):
        if isinstance(value, Partition):
            return value
        try:
            return parse_partition(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class IntListType(click.ParamType):
    name = "ints"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        out = []
        for pos, tok in enumerate(str(value).split(",")):
            tok = tok.strip()
            if not tok.isdigit():
                self.fail(f"entry {pos} is {tok!r}, expected a positive integer", param, ctx)
            out.append(int(tok))
        return tuple(out)


class BoxType(click.ParamType):
    name = "RxC"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        rows, sep, cols = str(value).lower().partition("x")
        if not sep or not rows.isdigit() or not cols.isdigit():
            self.fail(f"expected ROWSxCOLS such as 3x3, got {value!r}", param, ctx)
        return int(rows), int(cols)


SHAPE, INTS, BOX = ShapeType(), IntListType(), BoxType()


def _emit_poly(value, as_json: bool, unicode: bool) -> None:
    if isinstance(value, Poly):
        value = TruncSeries(value, max(value.degree(), 0), exact=True)
    if as_json:
        out = {"poly": value.body.to_json(), "exact": value.exact}
        if not value.exact:
            out["cutoff"] = value.cutoff
        click.echo(json.dumps(out, sort_keys=True))
    else:
        click.echo(value.render(unicode))


def _truncation_exit(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(EXIT_TRUNCATION)


@click.group()
def cli():
    """Refined canonical Grothendieck polynomials and their duals."""


@cli.command()
@click.argument("variant", type=click.Choice(["G", "Gds", "g"]))
@click.option("--outer", type=SHAPE, required=True, help="Outer shape, e.g. 2,1 or [2,1].")
@click.option("--inner", type=SHAPE, default="", show_default=True, help="Inner shape.")
@click.option("--nvars", type=click.IntRange(min=0), required=True)
@click.option("--form", type=click.Choice(["h", "e"]), default="h", show_default=True)
@click.option("--cutoff", type=click.IntRange(min=0), help="(alpha, beta)-degree to start from.")
@click.option("--flag-r", type=INTS, help="Lower row flags (G only).")
@click.option("--flag-s", type=INTS, help="Upper row flags (G only).")
@click.option("--series", is_flag=True, help="Print the truncated series instead of demanding stability.")
@click.option("--json", "as_json", is_flag=True)
@click.option("--unicode", is_flag=True)
def compute(variant, outer, inner, nvars, form, cutoff, flag_r, flag_s, series, as_json, unicode):
    """Compute G (single slash), Gds (double slash) or the dual g."""
    if (flag_r is None) != (flag_s is None):
        raise click.UsageError("--flag-r and --flag-s go together")
    if flag_r is not None and variant != "G":
        raise click.UsageError("flags are only available for variant G")
    if variant == "g":
        _emit_poly(jt_g(outer, inner, nvars, form), as_json, unicode)
        return
    start = cutoff if cutoff is not None else default_cutoff(outer, inner, nvars)
    try:
        if flag_r is not None:
            def value(c):
                return flagged_G(outer, inner, nvars, list(flag_r), list(flag_s), c)
        else:
            def value(c):
                return jt_G_raw(outer, inner, nvars, variant, form, c)
        result = value(start) if series else stabilize(value, start)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except (TruncationError, WindowError) as exc:
        _truncation_exit(exc)
    _emit_poly(result, as_json, unicode)


@cli.group()
def expand():
    """Schur expansions and one-parameter decompositions."""


@expand.command("schur")
@click.option("--of", "variant", type=click.Choice(["G", "Gds", "g"]), required=True)
@click.option("--outer", type=SHAPE, required=True)
@click.option("--inner", type=SHAPE, default="", show_default=True)
@click.option("--nvars", type=click.IntRange(min=1), required=True)
@click.option("--max-degree", type=click.IntRange(min=0), help="Keep Schur terms up to this degree (needed for G, Gds).")
@click.option("--text", is_flag=True, help="Human-readable output instead of JSON.")
@click.option("--unicode", is_flag=True)
def expand_schur(variant, outer, inner, nvars, max_degree, text, unicode):
    """Expand in Schur polynomials s_lambda(x_1, ..., x_n)."""
    if variant == "g":
        p = jt_g(outer, inner, nvars)
    else:
        if max_degree is None:
            raise click.UsageError("--max-degree is required for G and Gds")
        # homogeneity: this cutoff captures every term of x-degree <= max_degree
        cutoff = max_degree - outer.size() + inner.size()
        p = Poly() if cutoff < 0 else jt_G_raw(outer, inner, nvars, variant, "h", cutoff).body
    se = schur_expand(p, nvars, max_degree)
    click.echo(se.render(unicode) if text else se.dumps())


@expand.command("one-param")
@click.option("--side", type=click.Choice(["g", "G"]), required=True)
@click.option("--outer", type=SHAPE, required=True)
@click.option("--cutoff", type=click.IntRange(min=0), default=2, show_default=True,
              help="For G: how many cells larger the shapes may get.")
@click.option("--text", is_flag=True)
@click.option("--unicode", is_flag=True)
def expand_one_param(side, outer, cutoff, text, unicode):
    """Coefficients in the alpha = 0 family."""
    dec = decompose_one_param(outer, side, cutoff)
    shapes = sorted(dec, key=lambda p: (-p.size(), tuple(p)))
    if text:
        for mu in shapes:
            click.echo(f"{','.join(map(str, mu)) or '()'}: {dec[mu].render(unicode)}")
        return
    out = {
        "side": side,
        "outer": list(outer),
        "terms": [{"shape": list(mu), "coeff": dec[mu].to_json(), "text": dec[mu].render()} for mu in shapes],
    }
    click.echo(json.dumps(out, sort_keys=True))


@cli.command()
@click.argument("suite", type=click.Choice(sorted(SUITES)))
@click.option("--box", type=BOX, help="Shapes inside a ROWSxCOLS box.")
@click.option("--nvars", type=INTS, help="Number(s) of variables, e.g. 2 or 2,3.")
@click.option("--degree", type=click.IntRange(min=0), help="Total-degree bound for identity suites.")
@click.option("--cutoff", type=click.IntRange(min=0), help="(alpha, beta)-degree for series comparisons.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--sample", type=click.IntRange(min=1), help="Check a seeded random sample of this many cases.")
@click.option("--no-stability", is_flag=True, help="Skip the rerun at the larger bound.")
def verify(suite, box, nvars, degree, cutoff, seed, sample, no_stability):
    """Run an identity-verification suite and print a JSON report."""
    try:
        rep = run(
            suite, box=box, nvars=nvars, degree=degree, cutoff=cutoff,
            seed=seed, sample=sample, stability=not no_stability,
        )
    except (TruncationError, WindowError) as exc:
        _truncation_exit(exc)
    click.echo(rep.dumps())
    if not rep.ok:
        click.echo(f"counterexample: {json.dumps(rep.minimal(), sort_keys=True)}", err=True)
        sys.exit(EXIT_VERIFY)


def main():
    cli()


if __name__ == "__main__":
    main()
