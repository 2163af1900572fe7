#
# Copyright (C) 2026 The mrta-planner Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
#

"""Solve an exported LP file with HiGHS and print the optimal assignment.

Usage: solve_lp.py MODEL.lp OUT.txt [--time-limit SECONDS]

The MIP is solved first; then every integer column is fixed to its rounded
value and the remaining LP is re-solved with tight tolerances so that the
real-valued times satisfy the model equalities to ~1e-9. Exit status 0 means
an optimal assignment was written, 2 means infeasible, 3 anything else.
"""

import argparse
import sys

import highspy


def configure(h, time_limit):
    h.setOptionValue("output_flag", False)
    h.setOptionValue("time_limit", float(time_limit))
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 1e-9)
    h.setOptionValue("primal_feasibility_tolerance", 1e-9)
    h.setOptionValue("dual_feasibility_tolerance", 1e-9)
    h.setOptionValue("mip_feasibility_tolerance", 1e-9)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("model")
    parser.add_argument("out")
    parser.add_argument("--time-limit", type=float, default=600.0)
    args = parser.parse_args()

    h = highspy.Highs()
    configure(h, args.time_limit)
    if h.readModel(args.model) != highspy.HighsStatus.kOk:
        print("cannot read " + args.model, file=sys.stderr)
        return 3
    h.run()
    status = h.getModelStatus()
    if status == highspy.HighsModelStatus.kInfeasible:
        return 2
    if status != highspy.HighsModelStatus.kOptimal:
        print("solver status: " + h.modelStatusToString(status), file=sys.stderr)
        return 3

    lp = h.getLp()
    values = list(h.getSolution().col_value)
    integrality = list(lp.integrality_) if lp.integrality_ else []
    fixed = 0
    for i, kind in enumerate(integrality):
        if kind == highspy.HighsVarType.kInteger:
            v = float(round(values[i]))
            h.changeColBounds(i, v, v)
            fixed += 1
    if fixed:
        h.run()
        if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
            print("re-solve with fixed integers failed", file=sys.stderr)
            return 3
        values = list(h.getSolution().col_value)
        for i, kind in enumerate(integrality):
            if kind == highspy.HighsVarType.kInteger:
                values[i] = float(round(values[i]))

    with open(args.out, "w") as out:
        out.write("# objective %.17g\n" % h.getInfo().objective_function_value)
        for name, value in zip(lp.col_names_, values):
            out.write("%s %.17g\n" % (name, value))
    return 0


if __name__ == "__main__":
    sys.exit(main())
