"""Command-line client.

All linguistic work happens in the library; the CLI only parses arguments,
moves text, and maps failures onto exit codes: 0 success, 1 input errors,
2 lexicon errors.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .edit import EditError, apply_post_edit, check_pre_edit, parse_command
from .features import FeatureBundle, FeatureError
from .lexicon import Lexicon, LexiconError, load_lexicon, validate_lexicon
from .morph import SynthesisError, synthesize
from .notation import render
from .pipeline import analyze_display, analyses_display, run_pipeline, translate_text
from .morph import analyze_word


class InputError(click.ClickException):
    exit_code = 1


class LexiconCliError(click.ClickException):
    exit_code = 2


def _load(lexicon_dir: str | None, validate: bool = True) -> Lexicon:
    if not lexicon_dir:
        raise LexiconCliError("no lexicon directory given (use --lexicon)")
    try:
        lexicon = load_lexicon(Path(lexicon_dir))
    except LexiconError as exc:
        raise LexiconCliError(str(exc))
    if validate:
        diagnostics = validate_lexicon(lexicon)
        if diagnostics:
            listing = "\n".join(f"  {d}" for d in diagnostics)
            raise LexiconCliError(f"lexicon failed validation:\n{listing}")
    return lexicon


def _read_input(source: str | None) -> str:
    if source in (None, "-"):
        return sys.stdin.read()
    path = Path(source)
    if not path.exists():
        raise InputError(f"input file not found: {source}")
    return path.read_text(encoding="utf-8")


@click.group()
@click.option("--lexicon", "-l", "lexicon_dir", metavar="DIR",
              help="Lexicon bundle directory (e.g. data/sample-tel-hin).")
@click.pass_context
def main(ctx: click.Context, lexicon_dir: str | None) -> None:
    """Shallow-transfer language accessor."""
    ctx.obj = lexicon_dir


@main.command()
@click.option("--detail", type=click.IntRange(0, 2), default=2, show_default=True,
              help="Notation detail level.")
@click.option("--debug-analyses", is_flag=True,
              help="Emit per-token analyses on stderr.")
@click.argument("input_file", required=False)
@click.pass_context
def translate(ctx: click.Context, detail: int, debug_analyses: bool,
              input_file: str | None) -> None:
    """Translate text (stdin or a file) into the dialect notation."""
    lexicon = _load(ctx.obj)
    text = _read_input(input_file).rstrip("\n")
    if debug_analyses:
        from .pipeline import tokenize

        for token in tokenize(text):
            if token.is_punct:
                continue
            line = analyses_display(analyze_word(token.text, lexicon.source))
            click.echo(f"{token.text}\t{line}", err=True)
    click.echo(translate_text(text, lexicon, detail))


@main.command()
@click.argument("words", nargs=-1, required=True)
@click.pass_context
def analyze(ctx: click.Context, words: tuple[str, ...]) -> None:
    """Print slash-separated analyses of each word."""
    lexicon = _load(ctx.obj)
    for word in words:
        click.echo(analyze_display(word, lexicon))


@main.command(name="synthesize")
@click.argument("root")
@click.argument("category")
@click.argument("features", required=False, default="-")
@click.pass_context
def synthesize_cmd(ctx: click.Context, root: str, category: str, features: str) -> None:
    """Generate the target word for ROOT CATEGORY FEATURES."""
    lexicon = _load(ctx.obj)
    try:
        bundle = FeatureBundle.parse(features)
        click.echo(synthesize(root, category, bundle, lexicon.target))
    except (SynthesisError, FeatureError) as exc:
        raise InputError(str(exc))


@main.command()
@click.argument("input_file", required=False)
@click.pass_context
def check(ctx: click.Context, input_file: str | None) -> None:
    """Report pre-edit issues as line/column diagnostics; exit 1 if any."""
    lexicon = _load(ctx.obj)
    text = _read_input(input_file)
    issues = check_pre_edit(text, lexicon)
    for issue in issues:
        line = text.count("\n", 0, issue.start) + 1
        column = issue.start - (text.rfind("\n", 0, issue.start) + 1) + 1
        suggestions = f" -> {'|'.join(issue.suggestions)}" if issue.suggestions else ""
        click.echo(f"{line}:{column}: {issue.kind}: {issue.token}{suggestions}")
    if issues:
        sys.exit(1)


@main.command()
@click.option("--apply", "commands_file", required=True, metavar="FILE",
              help="Command script, one 'position verb args' line each.")
@click.option("--detail", type=click.IntRange(0, 2), default=2, show_default=True)
@click.argument("input_file", required=False)
@click.pass_context
def edit(ctx: click.Context, commands_file: str, detail: int,
         input_file: str | None) -> None:
    """Translate, apply a post-edit command script, print the result."""
    lexicon = _load(ctx.obj)
    text = _read_input(input_file).rstrip("\n")
    script = Path(commands_file)
    if not script.exists():
        raise InputError(f"commands file not found: {commands_file}")
    doc = run_pipeline(text, lexicon)
    for raw in script.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            doc = apply_post_edit(doc, parse_command(line), lexicon)
        except (EditError, SynthesisError) as exc:
            raise InputError(f"{line!r}: {exc}")
    click.echo(render(doc, detail))


@main.command(name="validate-lexicon")
@click.pass_context
def validate_lexicon_cmd(ctx: click.Context) -> None:
    """Exit 0 silently when the lexicon is consistent, else report and exit 2."""
    lexicon = _load(ctx.obj, validate=False)
    diagnostics = validate_lexicon(lexicon)
    if diagnostics:
        for diagnostic in diagnostics:
            click.echo(str(diagnostic), err=True)
        sys.exit(2)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--journal", "journal_path", default=None, metavar="FILE",
              help="Append one JSON record per session version to FILE.")
@click.option("--ui-dir", default=None, metavar="DIR",
              help="Static assets to serve at /ui (defaults to frontend/dist if present).")
@click.pass_context
def serve(ctx: click.Context, host: str, port: int, journal_path: str | None,
          ui_dir: str | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app

    lexicon = _load(ctx.obj)
    app = create_app(lexicon, journal_path=journal_path, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
