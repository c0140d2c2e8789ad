# -*- coding: utf-8 -*-

"""
Run every identity check on the example maps and print a summary table.
"""

from pathlib import Path

from greenlem import api

_dir_here = Path(__file__).absolute().parent

for path in sorted(_dir_here.joinpath("maps").glob("*.json")):
    f = api.load_map(path)
    reports = api.run_suite(f, which="all", depth=10, count=2048, seed=1)
    print(f"--- {path.name} (d = {f.degree})")
    for report in reports:
        status = "pass" if report.passed else "FAIL"
        print(
            f"{report.identity:<20} {status}  "
            f"residual {report.residual:.3e} <= {report.tolerance:.1e}"
        )
    result = api.discriminate_polynomial(f, depth=10, seed=1)
    print(f"{'discriminate':<20} {result.classification} (deviation {result.stat.deviation:.3e})")
