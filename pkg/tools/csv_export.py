"""CSV export of curves, per-frame estimates and warnings."""
import csv
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Union
from core.pipeline import FrameEstimate, WarningEvent
from core.ranging import ErrorSample
from config.logging import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]

FIG1_HEADER = ["disparity_px", "range_m"]
FIG2_HEADER = ["misalign_deg", "baseline_m", "rel_error"]
FIG3_HEADER = ["range_m", "target_width_m", "rel_error"]
ESTIMATES_HEADER = ["t_s", "target_index", "disparity_px", "range_m", "true_range_m"]
WARNINGS_HEADER = ["t_s", "target_index", "closing_speed_mps", "ttc_s"]


def format_number(value: float) -> str:
    """Shortest text that parses back to exactly ``value``."""
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _sample_value(sample: ErrorSample) -> str:
    if sample.marker is not None:
        return sample.marker.value
    return format_number(sample.value)


def _write_rows(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[str]]) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(out, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
            count += 1
    logger.info(f"CSV exported: {out} ({count} rows)")
    return out


def write_fig1_csv(samples: Sequence[ErrorSample], path: PathLike) -> Path:
    """Range curve as ``disparity_px,range_m`` rows."""
    rows = ([str(int(s.abscissa)), _sample_value(s)] for s in samples)
    return _write_rows(path, FIG1_HEADER, rows)


def write_fig2_csv(samples: Sequence[ErrorSample], path: PathLike) -> Path:
    """Misalignment curves as ``misalign_deg,baseline_m,rel_error`` rows; divergent samples keep their marker."""
    rows = (
        [format_number(s.abscissa), format_number(s.group_key), _sample_value(s)]
        for s in samples
    )
    return _write_rows(path, FIG2_HEADER, rows)


def write_fig3_csv(samples: Sequence[ErrorSample], path: PathLike) -> Path:
    """Target-size error curves, one row per (range, width) sample."""
    rows = (
        [format_number(s.abscissa), format_number(s.group_key), _sample_value(s)]
        for s in samples
    )
    return _write_rows(path, FIG3_HEADER, rows)


def write_estimates_csv(estimates: Sequence[FrameEstimate], path: PathLike) -> Path:
    """Per-frame estimates in frame order."""
    rows = (
        [
            format_number(e.t_s),
            str(e.target_index),
            str(e.disparity_px),
            format_number(e.range_m),
            format_number(e.true_range_m),
        ]
        for e in estimates
    )
    return _write_rows(path, ESTIMATES_HEADER, rows)


def write_warnings_csv(events: Sequence[WarningEvent], path: PathLike) -> Path:
    """Closing warnings, one row per event."""
    rows = (
        [
            format_number(w.t_s),
            str(w.target_index),
            format_number(w.closing_speed_mps),
            format_number(w.ttc_s),
        ]
        for w in events
    )
    return _write_rows(path, WARNINGS_HEADER, rows)


def read_csv_rows(path: PathLike) -> List[Dict[str, str]]:
    """Rows of a CSV written by this module, as header-keyed strings."""
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))
