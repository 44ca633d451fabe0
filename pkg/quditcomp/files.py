#!/usr/bin/env python3
#
#  files.py
"""
Reading and writing unitary, circuit and report files.

All three are JSON. Complex numbers are written as ``[re, im]`` pairs,
and matrices are row-major.
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
import json
from typing import Any, Dict, Mapping, Tuple

# 3rd party
import jsonschema  # type: ignore[import]
import numpy as np
from domdf_python_tools.paths import PathPlus
from domdf_python_tools.typing import PathLike

# this package
from quditcomp.circuit import Circuit
from quditcomp.gates import QuditSystem, gate_kinds
from quditcomp.linalg import ComplexMatrix, as_matrix
from quditcomp.validator import validate_document

__all__ = [
		"FileFormatError",
		"UNITARY_SCHEMA",
		"CIRCUIT_SCHEMA",
		"REPORT_SCHEMA",
		"load_json",
		"unitary_to_dict",
		"unitary_from_dict",
		"load_unitary",
		"dump_unitary",
		"load_circuit",
		"dump_circuit",
		"load_report",
		"dump_report",
		]


class FileFormatError(ValueError):
	"""
	Raised when a file cannot be parsed or does not match its schema.

	:param filename:
	:param message:
	"""

	def __init__(self, filename: PathLike, message: str):
		super().__init__(f"{filename}: {message}")
		self.filename = str(filename)


_complex_entry = {
		"type": "array",
		"items": {"type": "number"},
		"minItems": 2,
		"maxItems": 2,
		}

_dims = {
		"type": "array",
		"items": {"type": "integer", "minimum": 2},
		"minItems": 2,
		"maxItems": 2,
		}

#: Schema of unitary files.
UNITARY_SCHEMA: Dict[str, Any] = {
		"$schema": "http://json-schema.org/draft-07/schema",
		"type": "object",
		"properties": {
				"dims": _dims,
				"matrix": {"type": "array", "items": {"type": "array", "items": _complex_entry}},
				},
		"required": ["dims", "matrix"],
		}

#: Schema of circuit files.
CIRCUIT_SCHEMA: Dict[str, Any] = {
		"$schema": "http://json-schema.org/draft-07/schema",
		"type": "object",
		"properties": {
				"dims": _dims,
				"gates": {
						"type": "array",
						"items": {
								"type": "object",
								"properties": {"kind": {"enum": sorted(gate_kinds)}},
								"required": ["kind"],
								},
						},
				"provenance": {
						"type": "object",
						"properties": {
								"source": {"type": ["string", "null"]},
								"stage": {"type": ["string", "null"]},
								"metadata": {"type": "object"},
								},
						},
				},
		"required": ["dims", "gates"],
		}

_count = {"type": "integer", "minimum": 0}

#: Schema of report files.
REPORT_SCHEMA: Dict[str, Any] = {
		"$schema": "http://json-schema.org/draft-07/schema",
		"type": "object",
		"properties": {
				"system": {"type": "string"},
				"dims": _dims,
				"cRot": _count,
				"pSwap": _count,
				"CEX_tot": _count,
				"MS_tot": _count,
				"LS_tot": _count,
				"infidelity": {"type": "number"},
				"stage_infidelities": {"type": "object", "additionalProperties": {"type": "number"}},
				"wall_times": {"type": "object", "additionalProperties": {"type": "number"}},
				"converged": {"type": "boolean"},
				"native": {"type": "string"},
				"layers_used": {"type": ["integer", "null"]},
				},
		"required": ["system", "dims", "cRot", "pSwap", "CEX_tot", "MS_tot", "LS_tot", "infidelity"],
		}


def load_json(filename: PathLike, schema: Mapping[str, Any]) -> Any:
	"""
	Load a JSON file and validate it against ``schema``.

	:param filename:
	:param schema:

	:raises FileNotFoundError: If the file does not exist.
	:raises FileFormatError: If the file is not JSON or does not match the schema.
	"""

	filename = PathPlus(filename)

	if not filename.is_file():
		raise FileNotFoundError(str(filename))

	try:
		data = filename.load_json()
	except json.JSONDecodeError as e:
		raise FileFormatError(filename, f"invalid JSON: {e}") from None

	try:
		validate_document(data, schema, str(filename))
	except jsonschema.exceptions.ValidationError as e:
		path = '/'.join(str(p) for p in e.absolute_path)
		raise FileFormatError(filename, f"{e.message} (at '{path}')") from None

	return data


def unitary_to_dict(matrix: ComplexMatrix, system: QuditSystem) -> Dict[str, Any]:
	"""
	Returns the JSON form of a unitary over ``system``.
	"""

	return {
			"dims": [system.d1, system.d2],
			"matrix": [[[float(z.real), float(z.imag)] for z in row] for row in as_matrix(matrix)],
			}


def unitary_from_dict(data: Mapping[str, Any]) -> Tuple[QuditSystem, ComplexMatrix]:
	"""
	Parse a unitary from its :func:`JSON form <.unitary_to_dict>`.

	:raises ValueError: If the matrix is not ``D x D`` for the declared dimensions.
	"""

	system = QuditSystem(*data["dims"])
	rows = data["matrix"]

	if len(rows) != system.dim or any(len(row) != system.dim for row in rows):
		raise ValueError(f"Dimensions {system.dims} need a {system.dim}x{system.dim} matrix")

	matrix = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)
	return system, matrix


def load_unitary(filename: PathLike) -> Tuple[QuditSystem, ComplexMatrix]:
	"""
	Load a unitary file.

	Unitarity is not checked here.

	:param filename:

	:raises FileNotFoundError: If the file does not exist.
	:raises FileFormatError: If the file is malformed.
	"""

	data = load_json(filename, UNITARY_SCHEMA)

	try:
		return unitary_from_dict(data)
	except ValueError as e:
		raise FileFormatError(filename, str(e)) from None


def dump_unitary(filename: PathLike, matrix: ComplexMatrix, system: QuditSystem) -> None:
	"""
	Write a unitary file.

	:param filename:
	:param matrix:
	:param system:
	"""

	PathPlus(filename).dump_json(unitary_to_dict(matrix, system), indent=2)


def load_circuit(filename: PathLike) -> Circuit:
	"""
	Load a circuit file.

	:param filename:

	:raises FileNotFoundError: If the file does not exist.
	:raises FileFormatError: If the file is malformed or a gate is invalid.
	"""

	data = load_json(filename, CIRCUIT_SCHEMA)

	try:
		circuit = Circuit.from_dict(data)
		circuit.validate()
	except ValueError as e:
		raise FileFormatError(filename, str(e)) from None

	return circuit


def dump_circuit(filename: PathLike, circuit: Circuit) -> None:  # noqa: D103
	PathPlus(filename).dump_json(circuit.to_dict(), indent=2)


def load_report(filename: PathLike) -> Dict[str, Any]:
	"""
	Load a report file.

	:param filename:

	:raises FileNotFoundError: If the file does not exist.
	:raises FileFormatError: If the file is malformed.
	"""

	return dict(load_json(filename, REPORT_SCHEMA))


def dump_report(filename: PathLike, report: Mapping[str, Any]) -> None:
	"""
	Validate and write a report file.

	:param filename:
	:param report:
	"""

	validate_document(dict(report), REPORT_SCHEMA, str(filename))
	PathPlus(filename).dump_json(dict(report), indent=2)
