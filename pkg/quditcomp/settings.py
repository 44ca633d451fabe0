#!/usr/bin/env python3
#
#  settings.py
"""
The compiler's settings.

Each class is one setting. They can be given in a YAML file, on the command line,
or, for :class:`~.cache_dir`, in an environment variable.
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
import io
import math
import os
from typing import Any, List, Mapping

# 3rd party
from domdf_python_tools.paths import PathPlus
from ruamel.yaml import YAML
from typing_extensions import Literal

# this package
from quditcomp.configvar import Setting
from quditcomp.metaclass import SettingMeta
from quditcomp.parser import Parser

__all__ = [
		"native",
		"target_infidelity",
		"time_limit",
		"paper_budget",
		"max_layers",
		"seed",
		"restarts",
		"initial_temperature",
		"visiting_parameter",
		"acceptance_parameter",
		"restart_temperature_ratio",
		"anneal_iterations",
		"refine_iterations",
		"gradient_tolerance",
		"finite_difference_step",
		"theta_mode",
		"native_angle",
		"cache_dir",
		"unitarity_tolerance",
		"verify_threshold",
		"all_settings",
		"SettingsParser",
		"default_cache_dir",
		"CACHE_ENVVAR",
		"dump_settings",
		]

CACHE_ENVVAR = "QUDITCOMP_CACHE_DIR"


class native(Setting):  # noqa
	"""
	The native entangling gate the CEX gate is compiled into.

	With ``cex`` the lowered circuit is the final circuit.
	"""

	dtype = Literal["cex", "ms", "ls"]
	default = "cex"
	category = "pipeline"


class target_infidelity(Setting):  # noqa
	"""
	The infidelity the variational search must reach for a number of layers to succeed.
	"""

	dtype = float
	default = 1e-3
	exclusive_minimum = 0
	exclusive_maximum = 1
	category = "optimizer"


class time_limit(Setting):  # noqa
	"""
	Seconds allowed for each layer count tried by the search. 0 chooses 60 s for qubits and 600 s otherwise.
	"""

	dtype = float
	default = 0.0
	minimum = 0
	category = "optimizer"


class paper_budget(Setting):  # noqa
	"""
	When no time limit is given, allow d/4 hours for each layer count.
	"""

	dtype = bool
	default = False
	category = "optimizer"


class max_layers(Setting):  # noqa
	"""
	The largest number of layers tried. 0 chooses 2 d^2.
	"""

	dtype = int
	default = 0
	minimum = 0
	category = "optimizer"


class seed(Setting):  # noqa
	"""
	Seed for every random choice of the search.
	"""

	dtype = int
	default = 0
	minimum = 0
	maximum = 2**31 - 1
	category = "optimizer"


class restarts(Setting):  # noqa
	"""
	Independent annealing runs per layer count, each seeded with seed plus its index.
	"""

	dtype = int
	default = 4
	minimum = 1
	maximum = 1000
	category = "annealing"


class initial_temperature(Setting):  # noqa
	"""
	Initial annealing temperature.
	"""

	dtype = float
	default = 5230.0
	exclusive_minimum = 0.01
	maximum = 5e4
	category = "annealing"


class visiting_parameter(Setting):  # noqa
	"""
	Shape of the visiting distribution. Larger values jump further.
	"""

	dtype = float
	default = 2.62
	exclusive_minimum = 1
	maximum = 3
	category = "annealing"


class acceptance_parameter(Setting):  # noqa
	"""
	Shape of the acceptance distribution. Lower values accept fewer uphill moves.
	"""

	dtype = float
	default = -5.0
	exclusive_minimum = -1e4
	maximum = -5
	category = "annealing"


class restart_temperature_ratio(Setting):  # noqa
	"""
	Fraction of the initial temperature at which annealing reheats.
	"""

	dtype = float
	default = 2e-5
	exclusive_minimum = 0
	exclusive_maximum = 1
	category = "annealing"


class anneal_iterations(Setting):  # noqa
	"""
	Global annealing iterations per run.
	"""

	dtype = int
	default = 1000
	minimum = 1
	category = "annealing"


class refine_iterations(Setting):  # noqa
	"""
	Maximum iterations of each bounded L-BFGS refinement.
	"""

	dtype = int
	default = 200
	minimum = 1
	category = "refinement"


class gradient_tolerance(Setting):  # noqa
	"""
	Projected gradient tolerance at which a refinement stops.
	"""

	dtype = float
	default = 1e-10
	exclusive_minimum = 0
	category = "refinement"


class finite_difference_step(Setting):  # noqa
	"""
	Step of the central-difference gradient.
	"""

	dtype = float
	default = 1e-7
	exclusive_minimum = 0
	category = "refinement"


class theta_mode(Setting):  # noqa
	"""
	Whether the MS or LS angle is fixed, or optimised separately in each layer.
	"""

	dtype = Literal["fixed", "free"]
	default = "fixed"
	category = "ansatz"


class native_angle(Setting):  # noqa
	"""
	The MS or LS angle used when theta_mode is fixed.
	"""

	dtype = float
	default = math.pi
	category = "ansatz"


def default_cache_dir(raw_settings: Mapping[str, Any]) -> str:
	"""
	Returns the default directory for pre-computed CEX solutions, ``~/.cache/quditcomp``.
	"""

	return str(PathPlus.home() / ".cache" / "quditcomp")


class cache_dir(Setting):  # noqa
	"""
	Directory of pre-computed CEX solutions.
	"""

	dtype = str
	default = default_cache_dir
	envvar = CACHE_ENVVAR
	category = "pipeline"


class unitarity_tolerance(Setting):  # noqa
	"""
	Inputs this close to unitary are projected onto the nearest unitary. Others are rejected.
	"""

	dtype = float
	default = 1e-8
	exclusive_minimum = 0
	category = "pipeline"


class verify_threshold(Setting):  # noqa
	"""
	The largest infidelity accepted by verify.
	"""

	dtype = float
	default = 1e-3
	exclusive_minimum = 0
	exclusive_maximum = 1
	category = "pipeline"


#: Every setting, in the order they are listed.
all_settings: List[SettingMeta] = [
		native,
		target_infidelity,
		time_limit,
		paper_budget,
		max_layers,
		seed,
		restarts,
		initial_temperature,
		visiting_parameter,
		acceptance_parameter,
		restart_temperature_ratio,
		anneal_iterations,
		refine_iterations,
		gradient_tolerance,
		finite_difference_step,
		theta_mode,
		native_angle,
		cache_dir,
		unitarity_tolerance,
		verify_threshold,
		]


class SettingsParser(Parser):
	"""
	Parses the compiler's settings.
	"""

	settings = all_settings

	def visit_cache_dir(self, raw_settings: Mapping[str, Any]) -> str:  # noqa: D102
		return os.path.expanduser(cache_dir.get(raw_settings))


def dump_settings(settings: Mapping[str, Any]) -> str:
	"""
	Returns the settings as a YAML document.
	"""

	yaml = YAML(typ="safe", pure=True)
	yaml.default_flow_style = False

	buf = io.StringIO()
	yaml.dump(dict(settings), buf)
	return buf.getvalue()
