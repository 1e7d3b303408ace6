#!/usr/bin/env python3
"""
Job configuration for engine runs
Parses a YAML job file once into the group, bicharacter, system source and run options
"""

import os
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import yaml

from abgroup import AbelianGroupError, FinAbGroup, GroupElem, parse_element
from config_manager import substitute_env_vars
from skewroot import RootKind
from symplectic import Bicharacter, SymplecticError

ANALYSES = (
    'validate', 'build', 'killing', 'trace', 'centroid', 'graded-simple',
    'homsemi', 'reduce', 'identify', 'identities', 'enumerate',
)
DEFAULT_ANALYSES = ('validate', 'build', 'killing', 'trace', 'centroid', 'graded-simple',
                    'homsemi', 'reduce', 'identify')
ENUMERATION_METHODS = ('closure', 'powerset')
SECTIONS = ('group', 'bicharacter', 'rootsystem', 'run', 'output')


class JobConfigError(ValueError):
    """Raised for unreadable or malformed job files"""


@dataclass
class EnumerateRequest:
    kind: RootKind
    method: str = 'closure'


@dataclass
class OutputPaths:
    directory: Optional[str] = None
    structure_constants: str = 'structure_constants.txt'
    census: str = 'census.txt'
    bicharacter: str = 'bicharacter.txt'
    rootsystem: str = 'rootsystem.txt'
    report: Optional[str] = None


@dataclass
class JobConfig:
    """One parsed job: exactly one of roots, family or enumerate is set"""
    source: str
    group: Optional[FinAbGroup] = None
    beta: Optional[Bicharacter] = None
    kind: Optional[RootKind] = None
    roots: Optional[FrozenSet[GroupElem]] = None
    family: Optional[str] = None
    enumerate: Optional[EnumerateRequest] = None
    analyses: Tuple[str, ...] = DEFAULT_ANALYSES
    budget: Optional[int] = None
    jobs: Optional[int] = None
    output: OutputPaths = field(default_factory=OutputPaths)

    @property
    def mode(self) -> str:
        if self.family is not None:
            return 'family'
        if self.enumerate is not None:
            return 'enumerate'
        return 'explicit'

    def describe(self) -> str:
        if self.mode == 'family':
            return f"family {self.family}"
        if self.mode == 'enumerate':
            return f"enumerate {self.enumerate.kind.value} on {self.group}"
        return f"{self.kind.value} system of {len(self.roots)} roots on {self.group}"


class JobParser:
    """Parses a raw job mapping; every shape problem surfaces as JobConfigError"""

    def __init__(self, raw: Dict[str, Any], source: str = "<job>"):
        self.raw = raw
        self.source = source
        self.logger = logging.getLogger("job_config")

        unknown = [key for key in raw if key not in SECTIONS]
        if unknown:
            raise JobConfigError(f"{source}: unknown section(s): {', '.join(map(str, unknown))}")

        self.kept_coordinates: List[int] = []
        self.group = self._extract_group()
        self.beta = self._extract_bicharacter()
        self.rootsystem = self._section('rootsystem')
        self.run = self._section('run')

    def _section(self, name: str) -> Dict[str, Any]:
        value = self.raw.get(name) or {}
        if not isinstance(value, dict):
            raise JobConfigError(f"{self.source}: section [{name}] must be a mapping")
        return value

    def _extract_group(self) -> Optional[FinAbGroup]:
        section = self._section('group')
        if not section:
            return None
        orders = section.get('orders')
        if isinstance(orders, str):
            orders = orders.replace(',', ' ').split()
        if not isinstance(orders, list) or not orders:
            raise JobConfigError(f"{self.source}: group.orders must be a non-empty list of integers")
        try:
            values = [int(n) for n in orders]
        except (TypeError, ValueError):
            raise JobConfigError(f"{self.source}: malformed group orders {orders!r}")
        if any(n < 1 for n in values):
            raise JobConfigError(f"{self.source}: group orders must be positive, got {values}")
        self.orders = values
        self.kept_coordinates = [i for i, n in enumerate(values) if n > 1]
        if len(self.kept_coordinates) != len(values):
            self.logger.info(f"Dropping order-1 factors from {values}")
        try:
            return FinAbGroup(tuple(values))
        except AbelianGroupError as e:
            raise JobConfigError(f"{self.source}: {e}")

    def _extract_bicharacter(self) -> Optional[Bicharacter]:
        section = self._section('bicharacter')
        if not section:
            return None
        if self.group is None:
            raise JobConfigError(f"{self.source}: [bicharacter] needs a [group] section")
        k = len(self.orders)
        lower = section.get('lower', [])
        if lower and not isinstance(lower[0], list) and k == 2:
            lower = [lower]
        if not isinstance(lower, list) or len(lower) != max(k - 1, 0):
            raise JobConfigError(f"{self.source}: bicharacter.lower needs {max(k - 1, 0)} rows for {k} orders")
        expo = [[0] * k for _ in range(k)]
        try:
            for offset, row in enumerate(lower):
                i = offset + 1
                if not isinstance(row, list) or len(row) != i:
                    raise JobConfigError(f"{self.source}: bicharacter.lower row {i + 1} must have {i} entries")
                for j, v in enumerate(row):
                    expo[i][j] = int(v)
                    expo[j][i] = -int(v)
            N = int(section.get('N', self.group.exponent or 1))
        except JobConfigError:
            raise
        except (TypeError, ValueError) as e:
            raise JobConfigError(f"{self.source}: malformed bicharacter exponents: {e}")
        kept = self.kept_coordinates
        reduced = tuple(tuple(expo[i][j] for j in kept) for i in kept)
        try:
            return Bicharacter(self.group, N, reduced)
        except SymplecticError as e:
            raise JobConfigError(f"{self.source}: {e}")

    def _parse_element(self, text: Any) -> GroupElem:
        body = str(text).strip().strip('()')
        try:
            residues = [int(p) for p in body.replace(',', ' ').split()]
        except ValueError:
            raise JobConfigError(f"{self.source}: malformed element {text!r}")
        if len(residues) != len(self.orders):
            raise JobConfigError(f"{self.source}: element {text!r} needs {len(self.orders)} coordinates")
        kept = [residues[i] for i in self.kept_coordinates]
        try:
            return parse_element(self.group, "(" + ",".join(map(str, kept)) + ")")
        except AbelianGroupError as e:
            raise JobConfigError(f"{self.source}: {e}")

    def _extract_kind(self, value: Any, where: str) -> RootKind:
        try:
            return RootKind.parse(str(value))
        except ValueError:
            raise JobConfigError(f"{self.source}: {where} must be 'lie' or 'jordan', got {value!r}")

    def _extract_analyses(self) -> Tuple[str, ...]:
        analyses = self.run.get('analyses')
        if analyses is None:
            return DEFAULT_ANALYSES
        if isinstance(analyses, str):
            analyses = analyses.replace(',', ' ').split()
        unknown = [a for a in analyses if a not in ANALYSES]
        if unknown:
            raise JobConfigError(f"{self.source}: unknown analyses: {', '.join(map(str, unknown))}")
        return tuple(analyses)

    def _extract_positive(self, key: str) -> Optional[int]:
        value = self.run.get(key)
        if value is None:
            return None
        try:
            number = int(value)
        except (TypeError, ValueError):
            raise JobConfigError(f"{self.source}: run.{key} must be an integer, got {value!r}")
        if number <= 0:
            raise JobConfigError(f"{self.source}: run.{key} must be positive, got {number}")
        return number

    def _extract_output(self) -> OutputPaths:
        section = self._section('output')
        paths = OutputPaths()
        for name in ('directory', 'structure_constants', 'census', 'bicharacter', 'rootsystem', 'report'):
            if section.get(name) is not None:
                setattr(paths, name, str(section[name]))
        return paths

    def parse(self) -> JobConfig:
        has_roots = 'elements' in self.rootsystem
        family = self.rootsystem.get('family')
        enumerate_section = self.run.get('enumerate')
        present = sum(bool(x) for x in (has_roots, family, enumerate_section))
        if present != 1:
            raise JobConfigError(
                f"{self.source}: exactly one of rootsystem.elements, rootsystem.family "
                f"or run.enumerate must be given ({present} found)")

        job = JobConfig(source=self.source, group=self.group, beta=self.beta,
                        analyses=self._extract_analyses(), budget=self._extract_positive('budget'),
                        jobs=self._extract_positive('jobs'), output=self._extract_output())

        if family:
            job.family = str(family).strip()
            return job

        if self.group is None or self.beta is None:
            raise JobConfigError(f"{self.source}: explicit systems and enumeration need [group] and [bicharacter]")

        if enumerate_section:
            if not isinstance(enumerate_section, dict):
                enumerate_section = {'kind': enumerate_section}
            method = str(enumerate_section.get('method', 'closure'))
            if method not in ENUMERATION_METHODS:
                raise JobConfigError(f"{self.source}: unknown enumeration method {method!r}")
            job.enumerate = EnumerateRequest(self._extract_kind(enumerate_section.get('kind'), 'run.enumerate.kind'),
                                             method)
            return job

        elements = self.rootsystem.get('elements') or []
        if not isinstance(elements, list):
            raise JobConfigError(f"{self.source}: rootsystem.elements must be a list")
        job.kind = self._extract_kind(self.rootsystem.get('kind'), 'rootsystem.kind')
        job.roots = frozenset(self._parse_element(e) for e in elements)
        return job


def load_job(path: str) -> JobConfig:
    """Read, substitute and parse a job file"""
    if not os.path.exists(path):
        raise JobConfigError(f"Job file {path} not found")
    try:
        with open(path, 'r') as file:
            raw = yaml.safe_load(file)
    except yaml.YAMLError as e:
        raise JobConfigError(f"Error parsing YAML job file {path}: {e}")
    return parse_job(raw, source=path)


def parse_job(raw: Any, source: str = "<job>") -> JobConfig:
    if not isinstance(raw, dict):
        raise JobConfigError(f"{source}: job file must be a YAML mapping")
    return JobParser(substitute_env_vars(raw), source).parse()
