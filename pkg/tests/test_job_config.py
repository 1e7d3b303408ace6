"""
Tests for job file parsing
"""

import os

import pytest
import yaml

from job_config import DEFAULT_ANALYSES, JobConfigError, load_job, parse_job
from skewroot import RootKind


def _explicit(**overrides):
    raw = {
        'group': {'orders': [2, 2]},
        'bicharacter': {'N': 2, 'lower': [[1]]},
        'rootsystem': {'kind': 'lie', 'elements': ['(0,1)', '(1,0)', '(1,1)']},
    }
    raw.update(overrides)
    return raw


class TestExplicitJobs:
    """Group, bicharacter and explicit root sets"""

    def test_parse_explicit(self):
        job = parse_job(_explicit())
        assert job.mode == 'explicit'
        assert job.group.orders == (2, 2)
        assert job.beta.value(job.group.element((1, 0)), job.group.element((0, 1))) == -1
        assert job.kind is RootKind.LIE
        assert len(job.roots) == 3
        assert job.analyses == DEFAULT_ANALYSES
        assert job.describe() == "lie system of 3 roots on Z 2 x Z 2"

    def test_orders_as_string(self):
        job = parse_job(_explicit(group={'orders': "2, 2"}))
        assert job.group.orders == (2, 2)

    def test_malformed_orders(self):
        with pytest.raises(JobConfigError, match="malformed group orders"):
            parse_job(_explicit(group={'orders': "2 two"}))

    def test_non_positive_orders(self):
        with pytest.raises(JobConfigError, match="positive"):
            parse_job(_explicit(group={'orders': [2, 0]}))

    def test_order_one_factors_are_dropped(self):
        raw = {
            'group': {'orders': [3, 1, 3]},
            'bicharacter': {'N': 3, 'lower': [[0], [1, 0]]},
            'rootsystem': {'kind': 'lie', 'elements': ['(1,0,0)', '(2,0,2)']},
        }
        job = parse_job(raw)
        assert job.group.orders == (3, 3)
        assert sorted(g.residues for g in job.roots) == [(1, 0), (2, 2)]

    def test_element_arity(self):
        with pytest.raises(JobConfigError, match="needs 2 coordinates"):
            parse_job(_explicit(rootsystem={'kind': 'lie', 'elements': ['(1,0,1)']}))

    def test_malformed_element(self):
        with pytest.raises(JobConfigError, match="malformed element"):
            parse_job(_explicit(rootsystem={'kind': 'lie', 'elements': ['(x,1)']}))

    def test_unknown_kind(self):
        with pytest.raises(JobConfigError, match="rootsystem.kind"):
            parse_job(_explicit(rootsystem={'kind': 'associative', 'elements': ['(1,0)']}))

    def test_lower_row_count(self):
        with pytest.raises(JobConfigError, match="needs 1 rows"):
            parse_job(_explicit(bicharacter={'N': 2, 'lower': [[1], [0, 0]]}))

    def test_lower_row_length(self):
        raw = _explicit(group={'orders': [2, 2, 2]}, bicharacter={'N': 2, 'lower': [[1], [0]]})
        with pytest.raises(JobConfigError, match="row 3 must have 2 entries"):
            parse_job(raw)

    def test_bicharacter_needs_group(self):
        raw = _explicit()
        del raw['group']
        with pytest.raises(JobConfigError, match="needs a \\[group\\] section"):
            parse_job(raw)

    def test_ill_defined_exponent(self):
        raw = _explicit(group={'orders': [2, 3]}, bicharacter={'N': 6, 'lower': [[1]]})
        with pytest.raises(JobConfigError):
            parse_job(raw)


class TestJobShape:
    """Sections, exclusivity and run options"""

    def test_unknown_section(self):
        with pytest.raises(JobConfigError, match="unknown section"):
            parse_job(_explicit(extras={'x': 1}))

    def test_not_a_mapping(self):
        with pytest.raises(JobConfigError, match="YAML mapping"):
            parse_job(["group"])

    def test_section_must_be_mapping(self):
        with pytest.raises(JobConfigError, match="must be a mapping"):
            parse_job(_explicit(run=[1, 2]))

    def test_exactly_one_source(self):
        raw = _explicit(run={'enumerate': {'kind': 'lie'}})
        with pytest.raises(JobConfigError, match="exactly one of"):
            parse_job(raw)
        with pytest.raises(JobConfigError, match="\\(0 found\\)"):
            parse_job({'group': {'orders': [2, 2]}})

    def test_family_job(self):
        job = parse_job({'rootsystem': {'family': ' quad:f1:2:lie '}})
        assert job.mode == 'family'
        assert job.family == 'quad:f1:2:lie'
        assert job.group is None

    def test_enumerate_job(self):
        raw = _explicit(rootsystem={}, run={'enumerate': {'kind': 'jordan', 'method': 'powerset'}})
        job = parse_job(raw)
        assert job.mode == 'enumerate'
        assert job.enumerate.kind is RootKind.JORDAN
        assert job.enumerate.method == 'powerset'

    def test_enumerate_shorthand(self):
        job = parse_job(_explicit(rootsystem={}, run={'enumerate': 'lie'}))
        assert job.enumerate.kind is RootKind.LIE
        assert job.enumerate.method == 'closure'

    def test_unknown_enumeration_method(self):
        raw = _explicit(rootsystem={}, run={'enumerate': {'kind': 'lie', 'method': 'random'}})
        with pytest.raises(JobConfigError, match="enumeration method"):
            parse_job(raw)

    def test_enumeration_needs_bicharacter(self):
        with pytest.raises(JobConfigError, match="need \\[group\\] and \\[bicharacter\\]"):
            parse_job({'group': {'orders': [2, 2]}, 'run': {'enumerate': 'lie'}})

    def test_analyses(self):
        job = parse_job(_explicit(run={'analyses': "validate, build killing"}))
        assert job.analyses == ('validate', 'build', 'killing')
        with pytest.raises(JobConfigError, match="unknown analyses: flux"):
            parse_job(_explicit(run={'analyses': ['validate', 'flux']}))

    @pytest.mark.parametrize("value", [0, -3, "many"])
    def test_budget_must_be_positive_integer(self, value):
        with pytest.raises(JobConfigError, match="run.budget"):
            parse_job(_explicit(run={'budget': value}))

    def test_budget_and_jobs(self):
        job = parse_job(_explicit(run={'budget': "5000", 'jobs': 2}))
        assert job.budget == 5000
        assert job.jobs == 2

    def test_output_paths(self):
        job = parse_job(_explicit(output={'structure_constants': 'sl2.txt', 'directory': 'out'}))
        assert job.output.structure_constants == 'sl2.txt'
        assert job.output.directory == 'out'
        assert job.output.census == 'census.txt'

    def test_environment_substitution(self, monkeypatch):
        monkeypatch.setenv('FAMILY_NAME', 'clifford:4:lie')
        job = parse_job({'rootsystem': {'family': '${FAMILY_NAME}'}})
        assert job.family == 'clifford:4:lie'


class TestLoadJob:
    def test_load_fixture(self, fixtures_dir):
        job = load_job(os.path.join(fixtures_dir, 'explicit_sl2.yml'))
        assert job.mode == 'explicit'
        assert 'identities' in job.analyses

    def test_load_malformed_fixture(self, fixtures_dir):
        with pytest.raises(JobConfigError, match="malformed group orders"):
            load_job(os.path.join(fixtures_dir, 'malformed_orders.yml'))

    def test_missing_file(self, tmp_path):
        with pytest.raises(JobConfigError, match="not found"):
            load_job(str(tmp_path / 'missing.yml'))

    def test_invalid_yaml(self, tmp_path):
        path = tmp_path / 'broken.yml'
        path.write_text("group: [unclosed\n")
        with pytest.raises(JobConfigError, match="Error parsing YAML"):
            load_job(str(path))

    def test_round_trip_through_yaml(self, tmp_path):
        path = tmp_path / 'job.yml'
        path.write_text(yaml.safe_dump(_explicit()))
        assert len(load_job(str(path)).roots) == 3
