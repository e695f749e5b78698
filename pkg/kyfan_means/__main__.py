# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html
import logging
import pathlib
import sys
from collections.abc import Sequence

import fire

from kyfan_means.common import KyFanException
from kyfan_means.config import Config, ConfigFileNotFoundError
from kyfan_means.consts import PROG_NAME
from kyfan_means.runner import Command, RunConfig, run, write_output

try:
    from kyfan_means.__version__ import __version__
except ImportError:
    # not generated outside of a build
    __version__ = "0.0.0"


class ConfigCli:
    """
    Manage config.
    """

    _config: Config

    def __init__(self, config: Config):
        self._config = config

    def create(self) -> None:
        """
        Create an example config file in the default or user-specified location, if it does not exist.
        """
        try:
            location = self._config.file_path()
        except ConfigFileNotFoundError:
            location = self._config.create_config_file()
            print(f"Created config file: {location}")
        else:
            print(f"File already exists: {location}")

    def locate(self) -> None:
        """
        Print path to the config file, if it exists.
        """
        try:
            location = self._config.file_path()
        except ConfigFileNotFoundError as ex:
            print(ex.what)
        else:
            print(location)

    def show(self) -> None:
        """
        Print the settings in effect: the config file merged with environment overrides, or the defaults.
        """
        print(self._config.data().as_toml_str(), end="")


class Application:
    """
    Evaluate bivariate means and verify Ky Fan type inequalities between them on sample grids.

    :param version: Print version and exit.
    :param config_path: Alternative path to the config file.
    :param nx: Number of grid points along x.
    :param ny: Number of grid points along y.
    :param tol: Absolute tolerance on inequality margins.
    :param format: Output format: text, json or csv.
    :param out: Write the output to this file instead of stdout.
    :param workers: Number of threads used to evaluate grids.
    :param verbose: Print debug messages to stderr.
    """

    def __init__(
        self,
        version: bool = False,
        config_path: str | None = None,
        nx: int | None = None,
        ny: int | None = None,
        tol: float | None = None,
        format: str | None = None,
        out: str | None = None,
        workers: int | None = None,
        verbose: bool = False,
    ):
        self._config = Config(config_path)
        self.config = ConfigCli(self._config)
        self._overrides = dict(
            nx=nx,
            ny=ny,
            tolerance=tol,
            output_format=format,
            output_path=pathlib.Path(out) if out else None,
            workers=workers,
        )
        if verbose:
            logging.basicConfig(level=logging.DEBUG, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
        if version:
            # handle kyfan --version
            sys.exit(self.version())

    @staticmethod
    def version() -> None:
        """
        Print version and exit.
        """
        print(f"{PROG_NAME} version: {__version__}")

    def _run(self, command: Command, *args, **options) -> None:
        config = RunConfig(command, tuple(args), options, **self._overrides)
        result = run(config, self._config.data())
        # surface writes its own file to --out
        write_output(result.text, None if command == Command.surface else config.output_path)
        sys.exit(result.status)

    def eval(self, mean_id: str, x: float, y: float) -> None:
        """
        Evaluate a mean, e.g. 'eval A 0.1 0.4' or 'eval "Ar(1/3)" 1 2'.
        """
        self._run(Command.eval, mean_id, x, y)

    def seiffert(self, name: str, z: float | None = None) -> None:
        """
        Evaluate a Seiffert function at z, or check its bounds z/(1+z) <= m(z) <= z/(1-z) when z is omitted.
        Accepts builtin names (sin, arsinh, "a(1/2)", ...) and mean ids.
        """
        self._run(Command.seiffert, name, z=z)

    def check(self, kind: str, *ids: str) -> None:
        """
        Run one check: ratio, harmonic, ratio-monotone, q-increasing, diff-decreasing, g-decreasing (two means),
        roundtrip, sandwich (one mean or function) or derivative (a named claim).
        """
        self._run(Command.check, kind, *ids)

    def chain(self, name: str) -> None:
        """
        Verify every adjacent pair of a preset chain: ns2003, ns2003-extended, harmonic-upper, harmonic-lower.
        """
        self._run(Command.chain, name)

    def series(self, n_max: int = 200, terms: int = 50, oracle: bool = False) -> None:
        """
        Check signs of the series coefficients, the cosh bound and partial sums.

        :param n_max: Highest coefficient index.
        :param terms: Number of terms in the partial sums.
        :param oracle: Also compare low coefficients with a high-precision Taylor expansion.
        """
        self._run(Command.series, n_max=n_max, terms=terms, oracle=oracle)

    def note_demo(self) -> None:
        """
        Show a non-monotone function that still satisfies the inequality the hypotheses reduce to.
        """
        self._run(Command.note_demo)

    def catalog(self) -> None:
        """
        List registered means.
        """
        self._run(Command.catalog)

    def surface(self, m: str, n: str, relation: str = "ratio") -> None:
        """
        Export both sides of a Ky Fan inequality on the grid as CSV to --out.
        """
        self._run(Command.surface, m, n, relation=relation)

    def soundness(self) -> None:
        """
        For every preset pair and its reversal, run both forms of the hypothesis and the inequality itself.
        """
        self._run(Command.soundness)


def main(argv: Sequence[str] | None = None) -> None:
    try:
        fire.Fire(Application, command=list(argv) if argv is not None else None, name=PROG_NAME)
    except KyFanException as ex:
        print(ex.what, file=sys.stderr)
        sys.exit(ex.exit_code)
    except KeyboardInterrupt:
        print("\nAborted by the user.")


if __name__ == "__main__":
    main()
