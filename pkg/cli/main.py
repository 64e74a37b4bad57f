"""Main CLI entrypoint for stereorange."""
import importlib
import sys
from types import ModuleType
from typing import Optional, Sequence
import click
import typer
from rich.panel import Panel
from rich.markdown import Markdown
from config import setup_logging, settings
from cli.commands import figures, ranging, simulate
from cli import __version__
from cli.utils import EXIT_USAGE, console, err_console

# Initialize Typer app
app = typer.Typer(
    name="stereorange",
    help="Stereo rangefinding: disparity ranging, rig design, error curves and simulation",
    add_completion=False,
    no_args_is_help=True,
)

app.command("design")(ranging.design)
app.command("range")(ranging.range_)
app.command("fig1")(figures.fig1)
app.command("fig2")(figures.fig2)
app.command("fig3")(figures.fig3)
app.command("simulate")(simulate.simulate)
app.command("track")(simulate.track)


@app.callback()
def callback(
    debug: bool = typer.Option(
        settings.debug_mode,
        "--debug",
        "-d",
        help="Enable debug mode with detailed logging",
    ),
    log_level: str = typer.Option(
        settings.log_level,
        "--log-level",
        "-l",
        help="Set logging level (DEBUG, INFO, WARNING, ERROR)",
    ),
):
    """
    stereorange - stereo rangefinding toolkit

    Range from disparity, design a stereo baseline, generate error curves and
    run synthetic stereo sequences with closing warnings.
    """
    setup_logging(level=log_level, debug_mode=debug)


@app.command()
def version():
    """Show version information."""
    console.print(Panel(
        f"[bold cyan]stereorange[/bold cyan] [dim]v{__version__}[/dim]",
        title="Version Info",
        border_style="cyan",
    ))


@app.command()
def info():
    """Show the configured defaults."""
    info_text = f"""
## Defaults

- **Sensitivity**: {settings.sensitivity}
- **Target-size constant (px²)**: {settings.size_kappa_px2}
- **Disparity search**: {settings.search_fraction} of the horizontal resolution
- **Background intensity**: {settings.background_intensity}
- **TTC threshold (s)**: {settings.ttc_threshold_s}
- **Frame workers**: {settings.workers}

## Commands

- `stereorange design` - minimum reliable disparity and baseline
- `stereorange range` - range and quantization error for a disparity
- `stereorange fig1|fig2|fig3` - error curves as CSV
- `stereorange simulate` - render, match and range a scene file
- `stereorange track` - simulate plus closing warnings
"""
    console.print(Panel(
        Markdown(info_text),
        title="System Information",
        border_style="blue",
    ))


def click_exceptions(command: object) -> ModuleType:
    """
    Exceptions module of the click implementation a command is built on.

    Recent typer releases bundle their own copy of click, whose exception
    classes are distinct from the standalone package's.

    Args:
        command: Command object returned by ``typer.main.get_command``

    Returns:
        The matching ``exceptions`` module
    """
    for cls in type(command).__mro__:
        if cls.__name__ == "Command" and cls.__module__.endswith(".core"):
            package = cls.__module__.rsplit(".", 1)[0]
            return importlib.import_module(f"{package}.exceptions")
    return click.exceptions


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting.

    Usage errors exit 1 with a one-line diagnostic on stderr.
    """
    command = typer.main.get_command(app)
    errors = click_exceptions(command)
    try:
        result = command.main(
            args=list(argv) if argv is not None else None,
            prog_name="stereorange",
            standalone_mode=False,
        )
    except errors.ClickException as e:
        err_console.print(
            f"error: {e.format_message()}", highlight=False, markup=False, soft_wrap=True
        )
        return EXIT_USAGE
    except errors.Abort:
        return EXIT_USAGE
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
