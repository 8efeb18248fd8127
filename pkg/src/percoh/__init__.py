"""Finite-group analysis around periodic cohomology.

Core objects live in `percoh.group_core`; presentations and coset
enumeration in `percoh.presentations`; modular character data and the
quaternionic count in `percoh.chartab`; the periodicity gateway in
`percoh.periodicity`; quotient analysis and verdicts in `percoh.classify`;
family constructors in `percoh.catalog`; the command line in `percoh.cli`.
"""

__version__ = "0.1.0"
