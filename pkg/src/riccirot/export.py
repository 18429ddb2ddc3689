# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:

"""
Export meshes, profiles and reports to OBJ, CSV and JSON, and read profiles back from CSV.
"""

import csv
import io
from typing import Any, List, Sequence, Union

from .converter import CONVERTER
from .interface import (
    ExportFormat,
    FreeBoundarySolution,
    ProfileCurve,
    ProfileSample,
    RicciParams,
    SurfaceMesh,
    UnsupportedFormatError,
)

PROFILE_COLUMNS = ["s", "f", "fp", "g", "K", "H", "residual"]
SWEEP_COLUMNS = ["b", "rho", "neck_radius", "residual_boundary", "residual_conormal_f", "residual_conormal_g", "root", "degenerate"]


def _obj(mesh: SurfaceMesh) -> str:
    lines = ["v %r %r %r" % (float(x), float(y), float(z)) for x, y, z in mesh.vertices]
    lines += ["f %d %d %d %d" % tuple(index + 1 for index in quad) for quad in mesh.quads()]
    return "\n".join(lines) + "\n"


def _csv(header: List[str], rows: Sequence[Sequence[Any]]) -> str:
    # str() of a float is its shortest round-trip form, and infinities come out as inf and -inf
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _profile_csv(curve: ProfileCurve) -> str:
    return _csv(PROFILE_COLUMNS, [[getattr(sample, column) for column in PROFILE_COLUMNS] for sample in curve.samples])


def _sweep_csv(solutions: Sequence[FreeBoundarySolution]) -> str:
    rows = []
    for solution in solutions:
        row = [getattr(solution, column) for column in SWEEP_COLUMNS]
        row[SWEEP_COLUMNS.index("root")] = solution.root.value if solution.root else ""
        rows.append(row)
    return _csv(SWEEP_COLUMNS, rows)


def _is_sweep(obj: Any) -> bool:
    return isinstance(obj, (list, tuple)) and all(isinstance(item, FreeBoundarySolution) for item in obj)


def export(obj: Any, fmt: Union[ExportFormat, str]) -> bytes:
    """
    Serialize a mesh, profile, sweep or report.

    Args:
        obj(Any): A SurfaceMesh (OBJ), a ProfileCurve or list of FreeBoundarySolution (CSV), or any report (JSON)
        fmt(Union[ExportFormat, str]): Output format

    Returns:
        bytes: The encoded document

    Raises:
        UnsupportedFormatError: If the format does not apply to the object
    """
    try:
        fmt = ExportFormat(fmt)
    except ValueError as e:
        raise UnsupportedFormatError("Unknown export format: %s" % fmt) from e
    if fmt == ExportFormat.OBJ and isinstance(obj, SurfaceMesh):
        return _obj(obj).encode("ascii")
    if fmt == ExportFormat.CSV and isinstance(obj, ProfileCurve):
        return _profile_csv(obj).encode("ascii")
    if fmt == ExportFormat.CSV and _is_sweep(obj):
        return _sweep_csv(obj).encode("ascii")
    if fmt == ExportFormat.JSON and not isinstance(obj, SurfaceMesh):
        return CONVERTER.to_json(obj).encode("utf-8")
    raise UnsupportedFormatError("Format %s is not supported for %s" % (fmt.value, type(obj).__name__))


def read_profile_csv(data: str, params: RicciParams) -> ProfileCurve:
    """
    Read a profile written by export().

    Args:
        data(str): CSV text with the header s,f,fp,g,K,H,residual
        params(RicciParams): Parameters the profile was produced from

    Returns:
        ProfileCurve: The profile, anchored where g vanishes (or at its first sample)

    Raises:
        UnsupportedFormatError: If the header is wrong or a value is not a number
    """
    reader = csv.reader(io.StringIO(data))
    header = next(reader, None)
    if header is None or [column.strip() for column in header] != PROFILE_COLUMNS:
        raise UnsupportedFormatError("Profile CSV must have the header %s" % ",".join(PROFILE_COLUMNS))
    samples = []
    for number, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            values = [float(value) for value in row]
        except ValueError as e:
            raise UnsupportedFormatError("Line %d of the profile CSV is not numeric: %s" % (number, e)) from e
        if len(values) != len(PROFILE_COLUMNS):
            raise UnsupportedFormatError("Line %d of the profile CSV has %d columns" % (number, len(values)))
        samples.append(ProfileSample(**dict(zip(PROFILE_COLUMNS, values))))
    if not samples:
        raise UnsupportedFormatError("Profile CSV has no samples")
    anchor = next((sample.s for sample in samples if sample.g == 0.0), samples[0].s)
    return ProfileCurve(params=params, samples=samples, s0_anchor=anchor)
