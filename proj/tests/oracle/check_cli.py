#!/usr/bin/env python3
"""Compares `fslsense gap` and `fslsense qfi` against the mpmath reference.

Usage: check_cli.py path/to/fslsense
"""

import csv
import io
import math
import subprocess
import sys

import mpmath as mp

import highprec_reference as ref

CASES = [
    (100, 0.2, 0.92),
    (160, 0.47, 3.0),
    (220, 0.47, 2.1),
    (300, 0.3, 1.1),
]


def cli_row(exe, command, n, th, ga):
    out = subprocess.run(
        [exe, command, "--n", str(n), "--theta", repr(th), "--gamma", repr(ga)],
        check=True, capture_output=True, text=True).stdout
    return next(csv.DictReader(io.StringIO(out)))


def main():
    exe = sys.argv[1]
    failures = 0
    for n, th, ga in CASES:
        mp.mp.dps = max(ref.required_digits(n, th, ga), 50)
        gap_ref = ref.gap(n, th, ga)
        qfi_ref = ref.qfi(n, th, ga)
        g = cli_row(exe, "gap", n, th, ga)
        q = cli_row(exe, "qfi", n, th, ga)
        gap_err = abs(mp.mpf(g["gap"]) - gap_ref) / gap_ref
        log_err = abs(float(g["log_gap"]) - float(mp.log(gap_ref)))
        qfi_err = abs(mp.mpf(q["qfi"]) - qfi_ref) / qfi_ref
        ok = gap_err <= 1e-11 and log_err <= 1e-11 and qfi_err <= 1e-9
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'} N={n} theta={th}pi gamma={ga}: "
              f"gap rel err {float(gap_err):.2e}, log_gap abs err {log_err:.2e}, "
              f"qfi rel err {float(qfi_err):.2e}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
