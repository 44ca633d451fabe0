#!/usr/bin/env python3
#
#  cli.py
"""
The ``quditcomp`` command.

Exit codes:

* ``0`` success
* ``1`` the verified infidelity is above the threshold
* ``2`` a file or setting could not be parsed
* ``3`` the input is not unitary
* ``4`` the CEX decomposition did not converge; the partial circuit is still written
* ``5`` the synthesized or lowered circuit does not reproduce the input
"""
#
#  Copyright © 2026 The quditcomp Authors
#
#  Permission is hereby granted, free of charge, to any person obtaining a copy
#  of this software and associated documentation files (the "Software"), to deal
#  in the Software without restriction, including without limitation the rights
#  to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
#  copies of the Software, and to permit persons to whom the Software is
#  furnished to do so, subject to the following conditions:
#
#  The above copyright notice and this permission notice shall be included in all
#  copies or substantial portions of the Software.
#
#  THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
#  EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF
#  MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT.
#  IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM,
#  DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR
#  OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE
#  OR OTHER DEALINGS IN THE SOFTWARE.
#

# stdlib
import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, Iterable, MutableMapping, Optional, Sequence

# 3rd party
from typing_inspect import is_literal_type  # type: ignore[import]

# this package
from quditcomp.cache import SolutionCache
from quditcomp.files import FileFormatError
from quditcomp.linalg import NonUnitaryError
from quditcomp.metaclass import SettingMeta
from quditcomp.pipeline import PipelineConfig, run_full, run_report, run_verify
from quditcomp.settings import SettingsParser, all_settings, cache_dir, dump_settings, verify_threshold
from quditcomp.synthesis import SynthesisError
from quditcomp.utils import get_literal_values

__all__ = [
		"EXIT_OK",
		"EXIT_THRESHOLD",
		"EXIT_USAGE",
		"EXIT_NON_UNITARY",
		"EXIT_NOT_CONVERGED",
		"EXIT_SYNTHESIS",
		"build_parser",
		"configure_logging",
		"main",
		]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_THRESHOLD = 1
EXIT_USAGE = 2
EXIT_NON_UNITARY = 3
EXIT_NOT_CONVERGED = 4
EXIT_SYNTHESIS = 5

_STAGES = ("synthesize", "lower", "compile-cex", "full")


def _add_settings(parser: argparse.ArgumentParser, settings: Iterable[SettingMeta]) -> None:
	"""
	Add one optional flag per setting. Flags default to :py:obj:`None`, meaning unset.
	"""

	groups: Dict[str, argparse._ArgumentGroup] = {}

	for setting in settings:
		if setting.category not in groups:
			groups[setting.category] = parser.add_argument_group(f"{setting.category} settings")
		group = groups[setting.category]

		kwargs: Dict[str, Any] = {"dest": setting.__name__, "default": None, "help": setting.help_text()}

		if setting.dtype is bool:
			kwargs.update(action="store_const", const=True)
		elif is_literal_type(setting.dtype):
			kwargs.update(type=str.lower, choices=get_literal_values(setting.dtype))
		else:
			kwargs.update(type=setting.dtype)

		group.add_argument(setting.flag, **kwargs)


def _dims(value: str) -> int:
	d = int(value)
	if d < 2:
		raise argparse.ArgumentTypeError(f"dimensions must be at least 2, not {d}")
	return d


def build_parser() -> argparse.ArgumentParser:
	"""
	Returns the argument parser for ``quditcomp``.
	"""

	parser = argparse.ArgumentParser(
			prog="quditcomp",
			description="Compile two-qudit unitaries into native entangling gates.",
			)
	parser.add_argument("-v", "--verbose", action="count", default=0, help="Show more log messages.")
	parser.add_argument("-q", "--quiet", action="store_true", help="Only show errors.")
	parser.add_argument("--config", metavar="FILE", help="A YAML settings file.")

	commands = parser.add_subparsers(dest="command", metavar="COMMAND")
	commands.required = True

	compile_ = commands.add_parser("compile", help="Compile a unitary file.")
	compile_.add_argument("input", help="The unitary file.")
	compile_.add_argument("-o", "--output", required=True, help="Where to write the circuit.")
	compile_.add_argument("--report", metavar="FILE", help="Where to write the report.")
	compile_.add_argument("--stage", choices=_STAGES, default="full", help="The stage whose circuit is written.")
	compile_.add_argument("--dims", nargs=2, type=_dims, metavar=('D1', 'D2'), help="Expected dimensions.")
	compile_.add_argument("--label", help="The name of the input in the report.")
	_add_settings(compile_, all_settings)

	verify = commands.add_parser("verify", help="Check a circuit against a unitary.")
	verify.add_argument("circuit", help="The circuit file.")
	verify.add_argument("unitary", help="The unitary file.")
	verify.add_argument("--json", action="store_true", help="Print the result as JSON.")
	_add_settings(verify, [verify_threshold])

	report = commands.add_parser("report", help="Tabulate the reports in a directory.")
	report.add_argument("directory", help="A directory of report files.")
	report.add_argument("--json", action="store_true", help="Print the rows as JSON.")

	cache = commands.add_parser("cache", help="List or clear pre-computed CEX solutions.")
	cache.add_argument("action", choices=("list", "clear"))
	_add_settings(cache, [cache_dir])

	config = commands.add_parser("config", help="Print the resolved settings.")
	config.add_argument("--schema", action="store_true", help="Print the JSON schema of settings files.")
	_add_settings(config, all_settings)

	return parser


_handler: Optional[logging.Handler] = None


def configure_logging(verbosity: int = 0, quiet: bool = False) -> None:
	"""
	Send the package's log messages to standard error.

	Calling this again replaces the previous handler.

	:param verbosity: ``1`` shows info messages, ``2`` or more shows debug messages.
	:param quiet: Only show errors.
	"""

	global _handler

	if quiet:
		level = logging.ERROR
	elif verbosity >= 2:
		level = logging.DEBUG
	elif verbosity == 1:
		level = logging.INFO
	else:
		level = logging.WARNING

	package = logging.getLogger("quditcomp")
	if _handler is not None:
		package.removeHandler(_handler)

	_handler = logging.StreamHandler(sys.stderr)
	_handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
	package.addHandler(_handler)
	package.setLevel(level)


def _settings(args: argparse.Namespace) -> MutableMapping[str, Any]:
	overrides = {s.__name__: getattr(args, s.__name__, None) for s in all_settings}
	return SettingsParser().run(args.config, overrides)


def _print_json(data: Any) -> None:
	print(json.dumps(data, indent=2))


def _compile(args: argparse.Namespace) -> int:
	config = PipelineConfig.from_settings(
			_settings(args),
			input_path=args.input,
			output_path=args.output,
			stage=args.stage,
			report_path=args.report,
			dims=tuple(args.dims) if args.dims else None,
			label=args.label,
			)

	report, _ = run_full(config)
	_print_json(report.to_dict())

	return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def _verify(args: argparse.Namespace) -> int:
	threshold = _settings(args)["verify_threshold"]
	result = run_verify(args.circuit, args.unitary, threshold)

	if args.json:
		_print_json(result.to_dict())
	else:
		print(f"fidelity    {result.fidelity:.12f}")
		print(f"infidelity  {result.infidelity:.3e}")
		for kind, count in sorted(result.counts.items()):
			print(f"{kind:<11} {count}")

	return EXIT_OK if result.passed else EXIT_THRESHOLD


def _report(args: argparse.Namespace) -> int:
	reports, table = run_report(args.directory)

	if args.json:
		_print_json([r.to_dict() for r in reports])
	else:
		print(table)

	return EXIT_OK


def _cache(args: argparse.Namespace) -> int:
	cache = SolutionCache(_settings(args)["cache_dir"])

	if args.action == "clear":
		print(f"Removed {cache.clear()} cached solutions")
		return EXIT_OK

	for entry in cache.entries():
		details = ", ".join(f"{k}={v}" for k, v in entry.items() if k != "file")
		print(f"{entry['file']}  {details}")

	return EXIT_OK


def _config(args: argparse.Namespace) -> int:
	parser = SettingsParser()

	if args.schema:
		_print_json(parser.schema)
	else:
		print(dump_settings(_settings(args)), end='')

	return EXIT_OK


_commands: Dict[str, Callable[[argparse.Namespace], int]] = {
		"compile": _compile,
		"verify": _verify,
		"report": _report,
		"cache": _cache,
		"config": _config,
		}


def main(argv: Optional[Sequence[str]] = None) -> int:
	"""
	Run the ``quditcomp`` command.

	:param argv: The arguments, excluding the program name. Defaults to :py:data:`sys.argv`.

	:returns: The exit code.
	"""

	args = build_parser().parse_args(argv)
	configure_logging(args.verbose, args.quiet)

	try:
		return _commands[args.command](args)
	except NonUnitaryError as e:
		logger.error("%s", e)
		return EXIT_NON_UNITARY
	except (FileNotFoundError, FileFormatError) as e:
		logger.error("%s", e)
		return EXIT_USAGE
	except ValueError as e:
		logger.error("%s", e)
		return EXIT_USAGE
	except SynthesisError as e:
		logger.error("%s", e)
		return EXIT_SYNTHESIS
