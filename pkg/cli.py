#!/usr/bin/env python3
"""
Skew Root System Engine
Command-line orchestrator: validation, algebra analysis, enumeration, family checks and exports
"""

import argparse
import logging
import logging.handlers
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import yaml

from abgroup import AbelianGroupError, BudgetExceeded
from config_manager import ConfigManager, DEFAULT_RETENTION_DAYS
from cyclolinalg import CyclotomicError
from export_manager import ExportError, ExportManager
from families import (
    FamilyError, FamilyInstance, FamilyRegistry, QuadraticFormF2, QuadraticKind, identify, involution_support,
    pauli_model, clifford_model, witnesses_generate,
)
from galgebra import (
    GradedAlgebra, GradedAlgebraError, NotSemisimple, algebra_hom_from_reduction, build,
    build_with_pullback, centroid_dim, graded_simple, homogeneous_semisimple, invariant_form,
    jacobi_check, jordan_identity_check,
)
from job_config import DEFAULT_ANALYSES, JobConfig, JobConfigError, OutputPaths, load_job
from skewroot import (
    RootKind, SkewRootError, SkewRootSystem, classify, decompose, enumerate_systems, format_census, reduce,
    validate,
)
from symplectic import SymplecticError, radical
from task_processor import AnalysisTaskProcessor, TaskStatus

# Exit codes
EXIT_OK = 0
EXIT_FINDING = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

ENGINE_MODULE_LOGGERS = ('abgroup', 'symplectic', 'skewroot', 'galgebra', 'families',
                         'job_config', 'task_processor', 'export_manager', 'config_manager')
CENSUS_ALGEBRA_LIMIT = 64


class EngineError(Exception):
    """Base exception for engine runs"""


class ConfigurationError(EngineError):
    """Missing or contradictory command-line and job settings"""


INPUT_ERRORS = (EngineError, JobConfigError, FamilyError, SkewRootError, SymplecticError,
                AbelianGroupError, GradedAlgebraError, CyclotomicError, ExportError, ValueError)


class DailyRotatingLogger:
    """Application log and findings log with daily rotation; console output goes to stderr"""

    def __init__(self, app_logger_name: str, findings_logger_name: str, config: Dict[str, Any]):
        self.config = config
        self.log_dir = Path(config.get('log_dir') or 'logs')
        self.log_dir.mkdir(parents=True, exist_ok=True)

        level = getattr(logging, str(config.get('log_level', 'INFO')).upper(), logging.INFO)
        self.app_logger = logging.getLogger(app_logger_name)
        self.app_logger.setLevel(level)
        self.findings_logger = logging.getLogger(findings_logger_name)
        self.findings_logger.setLevel(logging.INFO)
        self.findings_logger.propagate = False
        self.level = level

        self._setup_handlers()

    def _setup_handlers(self):
        retention = int(self.config.get('retention_days', DEFAULT_RETENTION_DAYS))

        app_handler = logging.handlers.TimedRotatingFileHandler(
            filename=self.log_dir / "engine.log", when='midnight', interval=1, backupCount=retention)
        app_handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))

        findings_handler = logging.handlers.TimedRotatingFileHandler(
            filename=self.log_dir / "findings.log", when='midnight', interval=1, backupCount=retention)
        findings_handler.setFormatter(logging.Formatter('%(asctime)s - %(message)s'))

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(logging.Formatter('%(levelname)s - %(message)s'))
        console_handler.setLevel(max(self.level, logging.WARNING))
        for handler in (app_handler, findings_handler, console_handler):
            handler._engine_handler = True

        for name in (self.app_logger.name,) + ENGINE_MODULE_LOGGERS:
            target = logging.getLogger(name)
            self._drop_own_handlers(target)
            target.setLevel(self.level)
            target.addHandler(app_handler)
            target.addHandler(console_handler)
            target.propagate = False
        self._drop_own_handlers(self.findings_logger)
        self.findings_logger.addHandler(findings_handler)

    @staticmethod
    def _drop_own_handlers(target: logging.Logger):
        # repeated runs in one process must not stack handlers
        for handler in list(target.handlers):
            if getattr(handler, '_engine_handler', False):
                target.removeHandler(handler)
                handler.close()

    def close(self):
        for name in (self.app_logger.name, self.findings_logger.name) + ENGINE_MODULE_LOGGERS:
            self._drop_own_handlers(logging.getLogger(name))


@dataclass
class Target:
    """What a command works on: an explicit system or a family member"""
    label: str
    system: SkewRootSystem
    instance: Optional[FamilyInstance] = None

    @property
    def kind(self) -> RootKind:
        return self.system.kind

    def build(self) -> GradedAlgebra:
        if self.instance is not None:
            return self.instance.build(self.kind)
        return build(self.kind, self.system)


@dataclass
class Report:
    lines: List[str] = field(default_factory=list)
    exit_code: int = EXIT_OK

    def add(self, line: str):
        self.lines.append(line)

    def check(self, ok: bool, line: str):
        if ok:
            self.add(line)
        else:
            self.finding(line)

    def finding(self, line: str):
        """A negative verification result"""
        self.lines.append(line)
        self.exit_code = max(self.exit_code, EXIT_FINDING)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def load_version_info(path: str = "version.yml") -> Dict[str, Any]:
    version_file = Path(path)
    if not version_file.exists():
        version_file = Path(__file__).with_name("version.yml")
    try:
        with open(version_file, 'r') as f:
            return yaml.safe_load(f)['engine']
    except (OSError, KeyError, TypeError, yaml.YAMLError):
        return {'name': 'skewroot-engine', 'version': 'unknown'}


class CommandRegistry:
    """Registry for engine commands"""

    def __init__(self, logger: logging.Logger, engine: 'SkewRootEngine'):
        self.logger = logger
        self.engine = engine
        self.commands: Dict[str, Callable[[argparse.Namespace], int]] = {}
        self._register_default_commands()

    def _register_default_commands(self):
        self.commands = {
            'validate': self.engine.cmd_validate,
            'analyze': self.engine.cmd_analyze,
            'enumerate': self.engine.cmd_enumerate,
            'family': self.engine.cmd_family,
            'export': self.engine.cmd_export,
        }

    def register_command(self, name: str, handler: Callable[[argparse.Namespace], int]):
        self.commands[name] = handler
        self.logger.info(f"Registered command: {name}")

    def get_command(self, name: str) -> Optional[Callable[[argparse.Namespace], int]]:
        return self.commands.get(name)

    def list_commands(self) -> List[str]:
        return list(self.commands.keys())


class SkewRootEngine:
    """Main orchestrator: configuration, logging, families, analyses and exports"""

    def __init__(self, app_config_path: str = "config.yml", cli_args: Optional[argparse.Namespace] = None,
                 stdout=None):
        self.cli_args = cli_args
        self.stdout = stdout or sys.stdout
        self.config_manager = ConfigManager(app_config_path)
        logging_config = dict(self.config_manager.get_logging_config())
        if cli_args is not None and getattr(cli_args, 'log_level', None):
            logging_config['log_level'] = cli_args.log_level

        self.logger_manager = DailyRotatingLogger("SkewRootEngine", "SkewRootFindings", logging_config)
        self.logger = self.logger_manager.app_logger
        self.findings_logger = self.logger_manager.findings_logger

        self.version_info = load_version_info()
        self.family_registry = FamilyRegistry(logger=logging.getLogger("families"))
        self.command_registry = CommandRegistry(self.logger, self)

        self.enumeration_budget = self.config_manager.get_int('engine.enumeration_budget', 2 ** 20)
        self.search_budget = self.config_manager.get_int('engine.search_node_budget', 2_000_000)
        self.matrix_budget = self.config_manager.get_int('engine.matrix_budget', 16)
        self.jobs = self.config_manager.get_int('engine.jobs', 1)
        self.analysis_timeout = self.config_manager.get_int('engine.analysis_timeout', 600)
        self.random_seed = self.config_manager.get_int('engine.random_seed', 0)
        self.logger.info(f"🚀 {self.version_info.get('name')} {self.version_info.get('version')} initialized")

    # Settings

    def _apply_overrides(self, job: Optional[JobConfig], args: argparse.Namespace):
        """Command-line flags beat job settings, which beat config.yml"""
        budget = getattr(args, 'budget', None)
        if budget is None and job is not None:
            budget = job.budget
        if budget is not None:
            if budget <= 0:
                raise ConfigurationError(f"--budget must be positive, got {budget}")
            self.enumeration_budget = budget
            self.search_budget = budget
        jobs = getattr(args, 'jobs', None)
        if jobs is None and job is not None:
            jobs = job.jobs
        if jobs is not None:
            if jobs <= 0:
                raise ConfigurationError(f"--jobs must be positive, got {jobs}")
            self.jobs = jobs

    def _export_manager(self, job: Optional[JobConfig], args: argparse.Namespace) -> ExportManager:
        output = dict(self.config_manager.get_output_config())
        if job is not None and job.output.directory:
            output['directory'] = job.output.directory
        if getattr(args, 'out', None):
            output['directory'] = args.out
        return ExportManager(output, logger=logging.getLogger("export_manager"))

    def _load_job(self, args: argparse.Namespace) -> Optional[JobConfig]:
        if getattr(args, 'config', None):
            return load_job(args.config)
        return None

    def _header(self) -> str:
        return f"# {self.version_info.get('name', 'skewroot-engine')} {self.version_info.get('version', 'unknown')}"

    def _emit(self, report: Report):
        self.stdout.write(report.text())
        self.stdout.flush()

    def _record(self, label: str, what: str, verdict: str):
        self.findings_logger.info(f"{label} | {what} | {verdict}")

    # Targets

    def _resolve_target(self, job: Optional[JobConfig], args: argparse.Namespace) -> Target:
        family = getattr(args, 'family', None) or (job.family if job else None)
        if family:
            instance, kind = self.family_registry.resolve(family)
            system = instance.system(kind)
            return Target(f"{instance.tag}:{kind.value}", system, instance)
        if job is None:
            raise ConfigurationError("Give a job file with --config or a family with --family")
        if job.mode != 'explicit':
            raise ConfigurationError(f"Job {job.source} describes an {job.mode} run, not a root system")
        system = SkewRootSystem(job.beta, job.kind, job.roots)
        return Target(Path(job.source).stem, system)

    def _stem(self, target: Target) -> str:
        return target.label.replace(':', '_')

    # Commands

    def cmd_validate(self, args: argparse.Namespace) -> int:
        job = self._load_job(args)
        self._apply_overrides(job, args)
        target = self._resolve_target(job, args)
        report = Report()
        report.add(self._header())
        report.add(f"target: {target.label}")
        report.add(f"system: {target.system.describe()}")
        result = validate(target.kind, target.system.beta, target.system.roots, self.enumeration_budget)
        if result.ok:
            report.add(result.format())
        else:
            report.finding(result.format())
        self._record(target.label, "validate", "valid" if result.ok else ", ".join(result.axioms_violated()))
        self._emit(report)
        return report.exit_code

    def _analyses(self, target: Target, algebra: GradedAlgebra,
                  requested: Sequence[str]) -> List[Tuple[str, Callable[[], Any]]]:
        """Independent analyses of one algebra, in report order"""
        system = target.system
        instance = target.instance
        analyses: List[Tuple[str, Callable[[], Any]]] = []

        def form():
            result = invariant_form(algebra)
            return result, result.determinant

        def reduction():
            rad = radical(system.beta, self.enumeration_budget)
            if len(rad) == 1:
                return None
            reduced_system, projection = reduce(system, rad, self.enumeration_budget)
            reduced_algebra = build(system.kind, reduced_system)
            lifted = build_with_pullback(system, reduced_algebra, projection)
            return len(rad), reduced_system, algebra_hom_from_reduction(lifted, reduced_algebra, projection)

        def identities():
            if algebra.kind is RootKind.LIE:
                return jacobi_check(algebra, seed=self.random_seed)
            return jordan_identity_check(algebra)

        table = {
            'killing': form if algebra.kind is RootKind.LIE else None,
            'trace': form if algebra.kind is RootKind.JORDAN else None,
            'centroid': lambda: centroid_dim(algebra),
            'graded-simple': lambda: graded_simple(algebra),
            'homsemi': lambda: homogeneous_semisimple(algebra),
            'reduce': reduction,
            'identities': identities,
            'identify': (lambda: identify(algebra, instance, self.matrix_budget)) if instance else None,
        }
        for name in ('killing', 'trace', 'centroid', 'graded-simple', 'homsemi', 'reduce', 'identities', 'identify'):
            if name in requested and table[name] is not None:
                analyses.append((name, table[name]))
        return analyses

    def _report_task(self, report: Report, target: Target, algebra: GradedAlgebra, task) -> bool:
        """Add one analysis result to the report; returns True when the budget ran out"""
        name = task.name
        if task.status is TaskStatus.TIMEOUT:
            report.finding(f"{name}: timed out")
            self._record(target.label, name, "timeout")
            return False
        if task.status is TaskStatus.FAILED:
            if isinstance(task.exception, BudgetExceeded):
                report.add(f"{name}: budget exceeded ({task.error})")
                self._record(target.label, name, "budget exceeded")
                return True
            if isinstance(task.exception, NotSemisimple):
                report.finding(f"{name}: n/a ({task.error})")
            else:
                report.finding(f"{name}: failed ({task.error})")
            self._record(target.label, name, f"failed: {task.error}")
            return False

        result = task.result
        if name in ('killing', 'trace'):
            matrix, det = result
            report.add(f"{name} determinant: {det}")
            closed = "matches" if matrix.closed_form_ok else "MISMATCH at " + " ".join(map(str, matrix.mismatches))
            line = f"{name} closed form: {closed}"
            report.check(matrix.closed_form_ok, line)
            pairings = " ".join(f"{a}:{matrix.entry(a, -a)}" for a in algebra.basis)
            report.add(f"{name} pairings: {pairings}")
            if det.is_zero():
                report.finding(f"{name} form: degenerate")
            self._record(target.label, name, f"det={det} closed_form={matrix.closed_form_ok}")
        elif name == 'centroid':
            report.add(f"centroid dimension: {result}")
            self._record(target.label, name, str(result))
        elif name == 'graded-simple':
            report.add(f"graded simple: {_yes(result)}")
            self._record(target.label, name, _yes(result))
        elif name == 'homsemi':
            line = f"homogeneous semisimple: {_yes(result)}"
            report.check(result, line)
            self._record(target.label, name, _yes(result))
        elif name == 'reduce':
            if result is None:
                report.add("reduction: radical is trivial")
                self._record(target.label, name, "trivial radical")
            else:
                order, reduced_system, hom = result
                line = (f"reduction: radical of order {order}, |R| {len(target.system)} -> {len(reduced_system)}, "
                        f"products preserved: {_yes(hom.preserves_products)}, "
                        f"algebra map isomorphism: {_yes(hom.is_isomorphism)}")
                report.check(hom.preserves_products, line)
                self._record(target.label, name, f"isomorphism={hom.is_isomorphism}")
        elif name == 'identities':
            mode = "exhaustive" if result.exhaustive else "sampled"
            line = f"{result.name} identity: {'holds' if result.ok else 'FAILS'} ({result.checked} cases, {mode})"
            report.check(result.ok, line)
            self._record(target.label, name, f"ok={result.ok}")
        elif name == 'identify':
            line = f"identification: {result.format()}"
            report.check(result.matched, line)
            for note in result.notes:
                report.add(f"note: {note}")
            self._record(target.label, name, result.format())
        return False

    def cmd_analyze(self, args: argparse.Namespace) -> int:
        job = self._load_job(args)
        self._apply_overrides(job, args)
        target = self._resolve_target(job, args)
        requested = job.analyses if job else DEFAULT_ANALYSES
        exports = self._export_manager(job, args)

        report = Report()
        report.add(self._header())
        report.add(f"target: {target.label}")
        report.add(f"system: {target.system.describe()}")
        result = target.system.report
        if not result.ok:
            report.finding(result.format())
            self._record(target.label, "validate", ", ".join(result.axioms_violated()))
            self._emit(report)
            return report.exit_code
        report.add(result.format())

        decomposition = decompose(target.system)
        report.add(f"reduced: {_yes(target.system.reduced)}")
        caveat = " (graph test only; system not reduced)" if decomposition.caveat else ""
        report.add(f"components: {len(decomposition.components)} "
                   f"({'indecomposable' if decomposition.indecomposable else 'decomposable'}){caveat}")

        algebra = target.build()
        report.add(f"algebra: {algebra.describe()}")
        if target.instance is not None:
            expected = target.instance.expected[target.kind]
            line = f"expected: {expected.label} of dimension {expected.dimension}"
            report.check(expected.dimension == algebra.dimension, line)

        self.logger.info(f"🔬 Running {len(requested)} analyses on {target.label} with {self.jobs} job(s)")
        processor = AnalysisTaskProcessor(max_concurrent_tasks=self.jobs, default_timeout=self.analysis_timeout,
                                          logger=logging.getLogger("task_processor"))
        tasks = processor.run_all_sync(self._analyses(target, algebra, requested))
        budget_hit = False
        for task in tasks:
            budget_hit = self._report_task(report, target, algebra, task) or budget_hit

        name = job.output.structure_constants if job else exports.export_name(self._stem(target), 'structure_constants')
        path = exports.export_structure_constants(algebra, name)
        report.add(f"structure constants: {path.name}")
        self._emit(report)
        return EXIT_BUDGET if budget_hit else report.exit_code

    def cmd_enumerate(self, args: argparse.Namespace) -> int:
        job = self._load_job(args)
        if job is None or job.mode != 'enumerate':
            raise ConfigurationError("enumerate needs a job file with a run.enumerate section")
        self._apply_overrides(job, args)
        request = job.enumerate
        job.group.check_enumerable(self.enumeration_budget)

        self.logger.info(f"🔎 Enumerating {request.kind.value} systems on {job.group} ({request.method})")
        systems = enumerate_systems(job.beta, request.kind, budget=self.search_budget, jobs=self.jobs,
                                    method=request.method)
        classes = classify(systems, budget=self.search_budget)

        def annotate(system: SkewRootSystem) -> str:
            if len(system) > CENSUS_ALGEBRA_LIMIT:
                return "not-built"
            algebra = build(system.kind, system)
            form = invariant_form(algebra)
            text = f"dim={algebra.dimension},semisimple={_yes(form.nondegenerate)}"
            if form.nondegenerate:
                text += f",centroid={centroid_dim(algebra)}"
            return text

        census = format_census(request.kind, job.beta, classes, annotate)
        exports = self._export_manager(job, args)
        path = exports.export_census(census, job.output.census)
        self._record(Path(job.source).stem, "enumerate", f"{len(systems)} systems in {len(classes)} classes")

        report = Report()
        report.add(self._header())
        report.add(census.rstrip("\n"))
        report.add(f"census: {path.name}")
        self._emit(report)
        return report.exit_code

    def cmd_family(self, args: argparse.Namespace) -> int:
        report = Report()
        report.add(self._header())
        job = self._load_job(args)
        family = getattr(args, 'family', None) or (job.family if job else None)
        if not family:
            report.add("families:")
            for syntax in self.family_registry.list_families():
                report.add(f"  {syntax}")
            self._emit(report)
            return EXIT_OK
        self._apply_overrides(job, args)

        instance, kind = self.family_registry.resolve(family)
        system = instance.system(kind)
        label = f"{instance.tag}:{kind.value}"
        report.add(f"family: {label}")
        report.add(f"group: {instance.group}")
        report.add(f"system: {system.describe()}")

        expected = instance.expected_sizes[kind]
        line = f"root count: {len(system)} (expected {expected})"
        report.check(len(system) == expected, line)
        report.check(system.validated, system.report.format())
        reduced_expected = instance.expected_reduced[kind]
        line = f"reduced: {_yes(system.reduced)} (expected {_yes(reduced_expected)})"
        report.check(system.reduced == reduced_expected, line)

        if kind in instance.witnesses:
            ok = witnesses_generate(instance, kind)
            line = f"generating witnesses: {len(instance.witnesses[kind])} roots, {'generate G' if ok else 'FAIL'}"
            report.check(ok, line)

        if instance.family == 'quad':
            form_kind, k = instance.tag.split(':')[1], int(instance.tag.split(':')[2])
            form = QuadraticFormF2(QuadraticKind(form_kind), k)
            ok = form.polarization_matches()
            line = f"polarization matches beta: {_yes(ok)}"
            report.check(ok, line)
            if instance.involution is not None and 2 ** k <= self.matrix_budget:
                support = involution_support(instance.involution, k, self.matrix_budget)
                line = (f"involution supports (m={support.m}): K {len(support.skew_from_matrices)}, "
                        f"H {len(support.symmetric_from_matrices)}, agree with form: {_yes(support.agree)}")
                report.check(support.agree, line)

        model = self._presentation_model(instance, kind)
        if model is not None:
            ok = model.check_presentation(instance.beta) and model.bicharacter().same_values(instance.beta)
            line = f"matrix model {model.name}: presentation {'verified' if ok else 'FAILS'}"
            report.check(ok, line)

        for note in instance.notes.get(kind, []):
            report.add(f"note: {note}")
        self._record(label, "family", "ok" if report.exit_code == EXIT_OK else "finding")
        self._emit(report)
        return report.exit_code

    def _presentation_model(self, instance: FamilyInstance, kind: RootKind):
        if instance.family == 'nonsingular':
            orders = tuple(instance.group.orders[::2])
            size = 1
            for n in orders:
                size *= n
            return pauli_model(orders) if size <= self.matrix_budget else None
        if instance.family == 'clifford' and 2 ** instance.group.rank <= self.matrix_budget:
            return clifford_model(instance.group.rank)
        return None

    def cmd_export(self, args: argparse.Namespace) -> int:
        job = self._load_job(args)
        self._apply_overrides(job, args)
        target = self._resolve_target(job, args)
        target.system.require_validated()
        exports = self._export_manager(job, args)
        paths = job.output if job else OutputPaths(
            structure_constants=exports.export_name(self._stem(target), 'structure_constants'),
            bicharacter=exports.export_name(self._stem(target), 'bicharacter'),
            rootsystem=exports.export_name(self._stem(target), 'rootsystem'))

        written = [
            exports.export_bicharacter(target.system.beta, paths.bicharacter),
            exports.export_root_system(target.system, paths.rootsystem),
            exports.export_structure_constants(target.build(), paths.structure_constants),
        ]
        report = Report()
        report.add(self._header())
        report.add(f"target: {target.label}")
        for path in written:
            report.add(f"wrote: {path.name}")
        self._emit(report)
        return EXIT_OK

    # Dispatch

    def run(self, args: argparse.Namespace) -> int:
        handler = self.command_registry.get_command(args.command)
        if handler is None:
            self.logger.error(f"Unknown command: {args.command}")
            return EXIT_INPUT
        try:
            return handler(args)
        except BudgetExceeded as e:
            self.logger.error(f"📏 Budget exceeded: {e}")
            self.stdout.write(f"error: budget exceeded: {e}\n")
            return EXIT_BUDGET
        except INPUT_ERRORS as e:
            self.logger.error(f"❌ {args.command} failed: {e}")
            self.stdout.write(f"error: {e}\n")
            return EXIT_INPUT
        finally:
            self.logger_manager.close()


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments"""
    version = load_version_info()
    parser = argparse.ArgumentParser(description="Skew root systems, twisted group algebras and their Lie and Jordan algebras")
    parser.add_argument("--version", action="version", version=f"{version.get('name')} {version.get('version')}")
    parser.add_argument("command", choices=['validate', 'analyze', 'enumerate', 'family', 'export'])
    parser.add_argument("-c", "--config", help="Path to a YAML job file")
    parser.add_argument("--family", help="Family name, e.g. nonsingular:2:lie, clifford:5:jordan, quad:f1:2:lie")
    parser.add_argument("--out", help="Output directory for exports")
    parser.add_argument("--budget", type=int, help="Enumeration and search budget")
    parser.add_argument("--jobs", type=int, help="Concurrent analyses and enumeration workers")
    parser.add_argument("--log-level", choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                        help="Set logging level")
    parser.add_argument("--app-config", default="config.yml", help="Path to the engine configuration file")
    return parser.parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point"""
    try:
        args = parse_arguments(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT
    try:
        engine = SkewRootEngine(app_config_path=args.app_config, cli_args=args)
    except (ValueError, yaml.YAMLError) as e:
        print(f"error: configuration: {e}", file=sys.stderr)
        return EXIT_INPUT
    return engine.run(args)


if __name__ == "__main__":
    sys.exit(main())
