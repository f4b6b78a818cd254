"""Plain-text plot data: generic CSV plus gnuplot-friendly block files."""

import csv
import io
import os
import tempfile

import numpy as np

from .pairgate import FidelityMap

TRAJECTORY_COLUMNS = ("t", "pop_g", "pop_gp", "pop_f", "pop_e", "mixing_angle")


def atomic_write(path, text):
    """Write ``text`` to ``path`` via a temporary file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header, rows, fmt="{:.12g}"):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt.format(x) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()


def read_csv(path_or_text):
    """Header and rows (floats where possible) from CSV text or a file path."""
    text = path_or_text
    if os.path.exists(str(path_or_text)):
        with open(path_or_text, encoding="utf-8") as fh:
            text = fh.read()
    rows = list(csv.reader(io.StringIO(text)))

    def conv(x):
        try:
            return float(x)
        except ValueError:
            return x

    return rows[0], [[conv(x) for x in r] for r in rows[1:]]


def trajectory_csv(times, populations, mixing_angle):
    """Six-column single-molecule STIRAP trajectory."""
    rows = [(float(t), *map(float, p), float(a)) for t, p, a in zip(times, populations, mixing_angle)]
    return csv_text(TRAJECTORY_COLUMNS, rows)


def pair_trajectory_csv(times, states):
    """Two-molecule trajectory: populations of the 16 product states."""
    from .dressing import LEVELS

    labels = [f"pop_{a}{b}" for a in LEVELS for b in LEVELS]
    pops = np.abs(states) ** 2
    return csv_text(["t", *labels], [(float(t), *map(float, p)) for t, p in zip(times, pops)])


def fidelity_map_csv(fmap: FidelityMap):
    return csv_text([fmap.axis1, fmap.axis2, "fidelity", "leakage"], fmap.rows())


def fidelity_map_gnuplot(fmap: FidelityMap):
    """Blocks of constant axis1 separated by blank lines (for ``splot ... with pm3d``)."""
    lines = [f"# {fmap.axis1} {fmap.axis2} {fmap.metric} leakage"]
    for i, a in enumerate(fmap.grid1):
        for j, b in enumerate(fmap.grid2):
            lines.append(f"{a:.10g} {b:.10g} {fmap.values[i, j]:.12g} {fmap.leakage[i, j]:.6g}")
        lines.append("")
    return "\n".join(lines) + "\n"


def spectrum_csv(rows):
    """Long-format Zeeman spectrum: one row per (field, state), energies in MHz."""
    return csv_text(("B_gauss", "state_index", "energy_MHz", "dominant_label"), rows)


def spectrum_gnuplot(rows):
    """One data block per energy-ordered state index, each a curve energy(B).

    The comment line lists the dominant labels met along the curve, so level
    crossings show up as a change of label within one block.
    """
    by_state = {}
    for b, idx, energy, label in rows:
        pts, labels = by_state.setdefault(idx, ([], []))
        pts.append((b, energy))
        if label not in labels:
            labels.append(label)
    lines = []
    for idx in sorted(by_state):
        pts, labels = by_state[idx]
        lines.append(f"# state {idx} {' -> '.join(labels)}")
        lines += [f"{b:.10g} {e:.12g}" for b, e in pts]
        lines += ["", ""]
    return "\n".join(lines)


def emit_plotdata(obj, prefix, kind=None):
    """Write CSV (and gnuplot where it helps) for a map, trajectory or spectrum.

    Returns the list of written paths.
    """
    written = []
    if isinstance(obj, FidelityMap):
        atomic_write(prefix + ".csv", fidelity_map_csv(obj))
        atomic_write(prefix + ".dat", fidelity_map_gnuplot(obj))
        written += [prefix + ".csv", prefix + ".dat"]
    elif kind == "spectrum":
        atomic_write(prefix + ".csv", spectrum_csv(obj))
        atomic_write(prefix + ".dat", spectrum_gnuplot(obj))
        written += [prefix + ".csv", prefix + ".dat"]
    elif hasattr(obj, "mixing_angle") and hasattr(obj, "populations"):
        atomic_write(prefix + ".csv", trajectory_csv(obj.times, obj.populations, obj.mixing_angle))
        written.append(prefix + ".csv")
    else:
        raise TypeError(f"no plot-data writer for {type(obj).__name__}")
    return written
