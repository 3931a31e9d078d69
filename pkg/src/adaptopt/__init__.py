"""Multi-objective optimization of assembly-task workflows.

Model a workflow as an attributed graph, plug in meta-information appenders,
genotype-driven manipulators and fitness calculators, then search for
Pareto-optimal workflow variants with NSGA-II or NSGA-III.
"""

__version__ = "0.1.0"
