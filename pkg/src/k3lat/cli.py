"""Command-line verification harness.

Subcommands: ``info``, ``roots``, ``disc`` take a lattice expression;
``cusps`` classifies the 1-cusps of a family; ``verify`` runs the named
golden suite.  Exit codes: 0 all checks pass, 1 a check failed or the
input was rejected, 2 usage error.

Lattice expressions: atoms ``U``, ``U(n)``, ``A<n>``, ``D<n>`` (n >= 4),
``E6|E7|E8``, ``diag(d1,...,dk)``, ``gram[[...],...]``; ``+`` is the
orthogonal direct sum (left associative) and a parenthesized expression
or atom may carry a rescale suffix ``(n)``.  Root-system atoms produce
negative definite summands, so expressions read exactly like the rows
of the reference tables.  ADE indices may also be parenthesized, as in
``A(2)``.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from typing import List, Tuple

import click

from . import __version__
from .lattice import (
    DegenerateFormError,
    Lattice,
    LatticeError,
    direct_sum,
    disc_group,
    hyperbolic,
    rescale,
    root_lattice,
    signature,
    signature_with_radical,
)
from .roots import enumerate_norm, root_system
from .suites import Report, run_suites


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


@dataclass
class _Parser:
    text: str
    pos: int = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            self.pos = start
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def int_list(self) -> List[int]:
        out = [self.integer()]
        while self.peek() == ",":
            self.take(",")
            out.append(self.integer())
        return out

    def expr(self) -> Lattice:
        parts = [self.term()]
        while self.peek() == "+":
            self.take("+")
            parts.append(self.term())
        return direct_sum(*parts) if len(parts) > 1 else parts[0]

    def term(self) -> Lattice:
        lat = self.primary()
        while self.peek() == "(":
            save = self.pos
            self.take("(")
            try:
                n = self.integer()
            except ParseError:
                self.pos = save
                break
            self.take(")")
            if n == 0:
                self.pos = save
                raise self.error("rescale by zero")
            lat = rescale(lat, n)
        return lat

    def primary(self) -> Lattice:
        ch = self.peek()
        if ch == "(":
            self.take("(")
            lat = self.expr()
            self.take(")")
            return lat
        if self.text.startswith("diag", self.pos):
            self.pos += 4
            self.take("(")
            entries = self.int_list()
            self.take(")")
            from .lattice import diag_lattice

            return diag_lattice(entries)
        if self.text.startswith("gram", self.pos):
            self.pos += 4
            return self.gram_literal()
        if ch == "U":
            self.pos += 1
            return hyperbolic()
        if ch in "ADE":
            sym = ch
            self.pos += 1
            if self.peek() == "(":
                save = self.pos
                self.take("(")
                n = self.integer()
                self.take(")")
                # distinguish A(2) from a rescale suffix on a bare letter:
                # a bare letter is not a lattice, so this must be the index
            else:
                self.skip_ws()
                start = self.pos
                while self.pos < len(self.text) and self.text[self.pos].isdigit():
                    self.pos += 1
                if self.pos == start:
                    raise self.error(f"{sym} needs an index")
                n = int(self.text[start:self.pos])
            try:
                lat = root_lattice(sym, n)
            except LatticeError as exc:
                raise self.error(str(exc))
            return rescale(lat, -1)
        raise self.error("expected a lattice atom")

    def gram_literal(self) -> Lattice:
        self.take("[")
        rows = []
        while True:
            self.take("[")
            rows.append(self.int_list())
            self.take("]")
            if self.peek() == ",":
                self.take(",")
                continue
            break
        self.take("]")
        try:
            return Lattice(rows)
        except LatticeError as exc:
            raise self.error(str(exc))


def parse_lattice_expr(text: str) -> Lattice:
    p = _Parser(text)
    lat = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        raise p.error("trailing input")
    return lat


# -- rendering ----------------------------------------------------------


def _render_reports_text(reports: List[Report]) -> str:
    lines = []
    for rep in reports:
        lines.append(f"suite {rep.suite} (version {rep.version})")
        width = max((len(i.id) for i in rep.items), default=0)
        for i in rep.items:
            lines.append(
                f"  {i.status.upper():4} {i.id:<{width}}  {i.anchor}"
                + ("" if i.status == "pass" else f"  [computed {i.computed} expected {i.expected}]")
            )
        n_pass = sum(1 for i in rep.items if i.status == "pass")
        lines.append(f"  {n_pass}/{len(rep.items)} checks passed")
    return "\n".join(lines)


def _render_reports_json(reports: List[Report]) -> str:
    return json.dumps([r.as_dict() for r in reports], indent=2, sort_keys=False)


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Exact lattice toolkit and verification harness."""


@main.command()
@click.argument("expr")
def info(expr: str) -> None:
    """Rank, signature, parity, discriminant and roots of a lattice."""
    try:
        lat = parse_lattice_expr(expr)
    except ParseError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"rank       {lat.rank}")
    p, q, r = signature_with_radical(lat)
    if r:
        click.echo(f"signature  ({p},{q}) with radical of rank {r}")
        sys.exit(1)
    click.echo(f"signature  ({p},{q})")
    click.echo(f"parity     {'even' if lat.is_even else 'odd'}")
    click.echo(f"det        {lat.det()}")
    d = disc_group(lat)
    click.echo(f"disc       {d}")
    if p == 0 or q == 0:
        rtype, _ = root_system(lat) if lat.rank else (None, None)
        click.echo(f"roots      {rtype}")
    else:
        click.echo("roots      - (indefinite)")


@main.command()
@click.argument("expr")
def roots(expr: str) -> None:
    """Root count and ADE decomposition of a definite lattice."""
    try:
        lat = parse_lattice_expr(expr)
    except ParseError as exc:
        raise click.ClickException(str(exc))
    try:
        vecs = enumerate_norm(lat, 2)
        rtype, span = root_system(lat)
    except LatticeError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"roots      {len(vecs)}")
    click.echo(f"type       {rtype}")
    click.echo(f"span rank  {span.rank}")


@main.command()
@click.argument("expr")
def disc(expr: str) -> None:
    """Elementary divisors of the discriminant group."""
    try:
        lat = parse_lattice_expr(expr)
    except ParseError as exc:
        raise click.ClickException(str(exc))
    try:
        d = disc_group(lat)
    except DegenerateFormError as exc:
        raise click.ClickException(str(exc))
    click.echo(" ".join(str(x) for x in d.elementary_divisors) or "1")


@main.command()
@click.option("--family", required=True, help="family as n,k (one of 0,2 0,1 1,1 2,1)")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
def cusps(family: str, fmt: str) -> None:
    """Classify the 1-cusps of a family, with embedding witnesses."""
    try:
        n, k = (int(x) for x in family.split(","))
    except ValueError:
        raise click.UsageError("family must be given as n,k")
    from .cusps import CuspError, classify_cusps

    try:
        recs = classify_cusps(n, k)
    except CuspError as exc:
        raise click.UsageError(str(exc))
    if fmt == "json":
        payload = [
            {
                "family": [n, k],
                "root_type": str(r.jperp_root),
                "starred": r.jperp_root.starred,
                "witnesses": [
                    {
                        "model": w.model_kind,
                        "assignment": [
                            "+".join(f"{s}{m}" for s, m in fs) or "0"
                            for fs in w.assignment
                        ],
                        "rows": [list(row) for row in w.rows()],
                    }
                    for w in r.witnesses
                ],
            }
            for r in recs
        ]
        click.echo(json.dumps(payload, indent=2))
    else:
        for r in recs:
            click.echo(f"cusp {r.jperp_root}")
            for w in r.witnesses:
                click.echo(f"  model {w.model_kind}")
                for factors, comp, order in w.rows():
                    click.echo(
                        f"    {factors:<6} -> complement {comp:<6} dual-quotient order {order}"
                    )


@main.command()
@click.option(
    "--suite",
    required=True,
    type=click.Choice(
        ["tab3", "tab4", "expl", "eis", "order4", "tschirnhausen", "glue", "semifan", "all"]
    ),
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
def verify(suite: str, fmt: str) -> None:
    """Run a golden verification suite; exit 0 only if every item passes."""
    reports = run_suites(suite)
    if fmt == "json":
        click.echo(_render_reports_json(reports))
    else:
        click.echo(_render_reports_text(reports))
    if not all(r.passed for r in reports):
        sys.exit(1)


if __name__ == "__main__":
    main()
