#!/usr/bin/env python3
#
#  cache.py
"""
A directory of pre-computed CEX solutions.

Each solution is a circuit file named ``cex_d<d>_<native>_<theta mode>.json``,
whose provenance metadata records how it was found.
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
import logging
import math
from typing import Any, Dict, List, Optional

# 3rd party
from domdf_python_tools.paths import PathPlus
from domdf_python_tools.typing import PathLike

# this package
from quditcomp.ansatz import NativeGate, ThetaMode
from quditcomp.files import FileFormatError, dump_circuit, load_circuit
from quditcomp.gates import QuditSystem
from quditcomp.variational import CompilationResult

__all__ = ["SolutionCache", "cache_key"]

logger = logging.getLogger(__name__)

_ANGLE_TOLERANCE = 1e-12


def cache_key(system: QuditSystem, native: str, theta_mode: ThetaMode) -> str:
	"""
	Returns the file name of the solution for ``system``, ``native`` and ``theta_mode``.

	:param system:
	:param native: ``cex``, ``ms`` or ``ls``.
	:param theta_mode:
	"""

	if system.d1 == system.d2:
		dims = str(system.d1)
	else:
		dims = f"{system.d1}x{system.d2}"

	return f"cex_d{dims}_{native}_{theta_mode}.json"


class SolutionCache:
	"""
	Pre-computed CEX solutions stored in ``directory``.

	:param directory: Created when the first solution is stored.
	"""

	def __init__(self, directory: PathLike):
		self.directory = PathPlus(directory)

	def __repr__(self) -> str:
		return f"<SolutionCache {self.directory.as_posix()!r}>"

	def path_for(self, system: QuditSystem, native: NativeGate, theta_mode: ThetaMode) -> PathPlus:
		"""
		Returns the path of the solution file, whether or not it exists.
		"""

		return self.directory / cache_key(system, native.name, theta_mode)

	def load(self, system: QuditSystem, native: NativeGate, theta_mode: ThetaMode) -> Optional[CompilationResult]:
		"""
		Returns the stored solution, or :py:obj:`None` if there is no usable one.

		A solution found with a different fixed native angle does not count.
		Unreadable files are reported and ignored.

		:param system:
		:param native:
		:param theta_mode:
		"""

		path = self.path_for(system, native, theta_mode)

		if not path.is_file():
			logger.debug("No cached solution at %s", path)
			return None

		try:
			circuit = load_circuit(path)
		except FileFormatError as e:
			logger.warning("Ignoring unreadable cached solution: %s", e)
			return None

		if circuit.system != system:
			logger.warning("Ignoring cached solution %s for dimensions %s", path, circuit.system.dims)
			return None

		metadata: Dict[str, Any] = dict(circuit.provenance.metadata) if circuit.provenance else {}

		if theta_mode == "fixed" and native.has_angle:
			stored_angle = metadata.get("native_angle")
			if stored_angle is None or not math.isclose(stored_angle, native.angle, abs_tol=_ANGLE_TOLERANCE):
				logger.info("Cached solution %s was found for angle %s, not %s", path, stored_angle, native.angle)
				return None

		logger.info("Using cached solution %s", path)

		return CompilationResult(
				circuit=circuit,
				layers_used=int(metadata.get("layers_used", 0)),
				achieved_infidelity=float(metadata.get("achieved_infidelity", math.nan)),
				wall_time=0.0,
				converged=bool(metadata.get("converged", False)),
				)

	def store(
			self,
			result: CompilationResult,
			native: NativeGate,
			theta_mode: ThetaMode,
			seed: int,
			) -> PathPlus:
		"""
		Write a solution, replacing any existing one for the same key.

		:param result:
		:param native:
		:param theta_mode:
		:param seed: The seed the solution was found with.

		:returns: The path written to.
		"""

		system = result.circuit.system
		path = self.path_for(system, native, theta_mode)
		path.parent.maybe_make(parents=True)

		metadata = {
				"d": system.d1 if system.d1 == system.d2 else list(system.dims),
				"native": native.name,
				"native_angle": native.angle,
				"theta_mode": theta_mode,
				"layers_used": result.layers_used,
				"achieved_infidelity": result.achieved_infidelity,
				"converged": result.converged,
				"seed": seed,
				}

		dump_circuit(path, result.circuit.with_provenance(source=None, stage="compile-cex", metadata=metadata))
		logger.info("Stored solution in %s", path)

		return path

	def entries(self) -> List[Dict[str, Any]]:
		"""
		Returns the metadata of every readable solution, sorted by file name.
		"""

		rows: List[Dict[str, Any]] = []

		if not self.directory.is_dir():
			return rows

		for path in sorted(self.directory.glob("cex_d*.json")):
			try:
				circuit = load_circuit(path)
			except FileFormatError as e:
				logger.warning("Skipping unreadable cached solution: %s", e)
				continue

			metadata = dict(circuit.provenance.metadata) if circuit.provenance else {}
			rows.append({"file": path.name, "gates": len(circuit), **metadata})

		return rows

	def clear(self) -> int:
		"""
		Delete every solution.

		:returns: The number of files removed.
		"""

		if not self.directory.is_dir():
			return 0

		removed = 0
		for path in self.directory.glob("cex_d*.json"):
			path.unlink()
			removed += 1

		logger.info("Removed %d cached solutions from %s", removed, self.directory)
		return removed
