"""
Text and CSV reports for the ruler table and the inequivalent-ruler counts
"""
import csv
import os
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from catalog import INEQUIVALENT_K3, RULER_TABLE, RULER_TABLE_MISPRINTS
from config import RULER_TABLE_DECIMALS
from field_core import field_from_order
from utils import ensure_dir_exists, format_fraction, truncate_decimal


def ruler_table_rows(check_qmin: bool = False) -> List[Dict]:
    """
    Re-verify each catalogued ruler and recompute both densities

    Args:
        check_qmin: Also confirm that no smaller admissible q carries a ruler of the same size
                    (slow for k >= 11)

    Returns:
        One dict per table row
    """
    from search import admissible_ruler_orders, ruler_table_row, search_rulers, verify_ruler

    rows = []
    for entry in RULER_TABLE:
        k, q, ruler = entry['k'], entry['q'], entry['ruler']
        ctx = field_from_order(q)
        report = verify_ruler(ctx, k, ruler)
        densities = ruler_table_row(ctx, ruler)
        row = {'k': k, 'q': q, 'ruler': ruler, 'valid': report.valid, 'qmin_confirmed': None}
        for key in ('density', 'extended'):
            shown = truncate_decimal(densities[key], RULER_TABLE_DECIMALS)
            row[key] = densities[key]
            row[f'{key}_shown'] = shown
            row[f'{key}_printed'] = entry[key]
            row[f'{key}_match'] = shown == Fraction(entry[key])
            row[f'{key}_misprint'] = (k, key) in RULER_TABLE_MISPRINTS
        if check_qmin:
            smaller = []
            for q2 in admissible_ruler_orders(k, q):
                v2 = (q2 - 1) // 2
                if k * (k - 1) > v2 - 1:
                    continue
                if search_rulers(field_from_order(q2), k, "first"):
                    smaller.append(q2)
            row['qmin_confirmed'] = not smaller
            if smaller:
                logging.warning(f"k={k}: rulers exist at smaller q {smaller}")
        rows.append(row)
        logging.debug(f"✓ Ruler table row k={k} q={q} checked")
    return rows


def generate_ruler_table_report(rows: List[Dict]) -> str:
    report_lines = []
    report_lines.append("=" * 60)
    report_lines.append("HEFFTER RULERS AT THE LEAST ADMISSIBLE q")
    report_lines.append("=" * 60)
    report_lines.append("")
    for row in rows:
        status = "✓" if row['valid'] else "❌"
        report_lines.append(f"{status} k={row['k']:<3} q={row['q']:<4} ruler={' '.join(str(b) for b in row['ruler'])}")
        for key, label in (('density', 'density'), ('extended', 'extended')):
            verdict = "matches" if row[f'{key}_match'] else (
                "misprint in the printed table" if row[f'{key}_misprint'] else "MISMATCH")
            report_lines.append(
                f"    {label:<9} {format_fraction(row[key])} shown {float(row[f'{key}_shown']):.{RULER_TABLE_DECIMALS}f}"
                f" printed {row[f'{key}_printed']} ({verdict})"
            )
        if row['qmin_confirmed'] is not None:
            report_lines.append(f"    least q: {'confirmed' if row['qmin_confirmed'] else 'NOT confirmed'}")
    report_lines.append("")
    report_lines.append("=" * 60)
    return "\n".join(report_lines) + "\n"


def generate_inequivalent_report(rows: List[Tuple[int, int]], k: int) -> str:
    """
    Table of inequivalent ruler counts, compared with the reference counts when k = 3
    """
    reference = INEQUIVALENT_K3 if k == 3 else {}
    report_lines = []
    report_lines.append("=" * 60)
    report_lines.append(f"INEQUIVALENT HEFFTER RULERS, k={k}")
    report_lines.append("=" * 60)
    report_lines.append(f"{'q':>6} {'count':>6} {'reference':>10}")
    for q, count in rows:
        expected = reference.get(q)
        marker = "" if expected is None else (" ✓" if expected == count else " ❌")
        report_lines.append(f"{q:>6} {count:>6} {'' if expected is None else expected:>10}{marker}")
    report_lines.append("=" * 60)
    return "\n".join(report_lines) + "\n"


def generate_inequivalent_csv(rows: List[Tuple[int, int]], k: int) -> List[List[str]]:
    reference = INEQUIVALENT_K3 if k == 3 else {}
    csv_rows = [['k', 'q', 'count', 'reference']]
    for q, count in rows:
        expected = reference.get(q)
        csv_rows.append([str(k), str(q), str(count), '' if expected is None else str(expected)])
    return csv_rows


def save_text_report(report: str, filepath: str):
    """Save text report to file"""
    ensure_dir_exists(os.path.dirname(filepath))
    with open(filepath, 'w', encoding='utf-8') as f:
        f.write(report)
    logging.info(f"💾 Saved report to: {filepath}")


def save_csv_report(rows: List[List[str]], filepath: str):
    """Save CSV report"""
    ensure_dir_exists(os.path.dirname(filepath))
    with open(filepath, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f)
        writer.writerows(rows)
    logging.info(f"💾 Saved CSV report to: {filepath}")


def reference_mismatches(rows: List[Tuple[int, int]], k: int) -> Optional[List[int]]:
    """q values whose count disagrees with the reference table (None when there is no reference)"""
    if k != 3:
        return None
    return [q for q, count in rows if q in INEQUIVALENT_K3 and INEQUIVALENT_K3[q] != count]
