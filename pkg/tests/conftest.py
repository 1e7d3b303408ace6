"""
Pytest configuration and fixtures for the skew root system engine tests
"""

import pytest
import tempfile
import os
import yaml
from pathlib import Path
from unittest.mock import patch

from abgroup import FinAbGroup
from skewroot import RootKind, SkewRootSystem
from symplectic import Bicharacter

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES_DIR = REPO_ROOT / "fixtures"


@pytest.fixture
def temp_config_dir():
    """Create a temporary directory for test configuration files"""
    with tempfile.TemporaryDirectory() as temp_dir:
        yield Path(temp_dir)


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture
def sample_config_dict():
    """Sample engine configuration using environment substitution"""
    return {
        'engine': {
            'name': '${ENGINE_NAME:-skewroot-engine}',
            'enumeration_budget': '${ENUMERATION_BUDGET:-1048576}',
            'search_node_budget': '${SEARCH_NODE_BUDGET:-2000000}',
            'matrix_budget': '${MATRIX_BUDGET:-16}',
            'jobs': '${ENGINE_JOBS:-1}',
            'analysis_timeout': '${ANALYSIS_TIMEOUT:-600}',
        },
        'logging': {
            'daily_rotation': True,
            'findings_log_separate': True,
            'retention_days': '${LOG_RETENTION_DAYS:-30}',
            'log_level': '${LOG_LEVEL:-INFO}',
            'log_dir': '${LOG_DIR:-./logs}',
        },
        'output': {
            'directory': '${OUTPUT_DIR:-./out}',
            'overwrite': '${OUTPUT_OVERWRITE:-true}',
        },
    }


@pytest.fixture
def sample_env_vars():
    """Sample environment variables for testing"""
    return {
        'ENGINE_NAME': 'test-engine',
        'ENUMERATION_BUDGET': '4096',
        'SEARCH_NODE_BUDGET': '50000',
        'MATRIX_BUDGET': '8',
        'ENGINE_JOBS': '2',
        'LOG_RETENTION_DAYS': '7',
        'LOG_LEVEL': 'DEBUG',
        'OUTPUT_OVERWRITE': 'false',
    }


@pytest.fixture
def config_file(temp_config_dir, sample_config_dict):
    """Create a temporary config.yml file"""
    config_path = temp_config_dir / "config.yml"
    with open(config_path, 'w') as f:
        yaml.dump(sample_config_dict, f)
    return config_path


@pytest.fixture
def env_file(temp_config_dir, sample_env_vars):
    """Create a temporary .env file"""
    env_path = temp_config_dir / ".env"
    with open(env_path, 'w') as f:
        for key, value in sample_env_vars.items():
            f.write(f"{key}={value}\n")
    return env_path


@pytest.fixture
def minimal_config():
    """Minimal valid configuration for testing"""
    return {
        'engine': {'enumeration_budget': 1024, 'search_node_budget': 1000, 'matrix_budget': 4, 'jobs': 1},
        'logging': {'log_level': 'INFO', 'retention_days': 30},
        'output': {'directory': './out'},
    }


@pytest.fixture
def mock_env_vars(sample_env_vars):
    """Mock environment variables for testing"""
    with patch.dict(os.environ, sample_env_vars, clear=False):
        yield sample_env_vars


@pytest.fixture
def clear_env_vars(sample_env_vars):
    """Remove the engine environment variables for the duration of a test"""
    names = list(sample_env_vars) + ['OUTPUT_DIR', 'LOG_DIR', 'ANALYSIS_TIMEOUT']
    original_values = {name: os.environ.pop(name) for name in names if name in os.environ}
    yield
    os.environ.update(original_values)


@pytest.fixture
def engine_workspace(temp_config_dir, minimal_config, monkeypatch):
    """A working directory with an engine config whose logs and exports stay inside it"""
    config = dict(minimal_config)
    config['logging'] = dict(config['logging'], log_dir=str(temp_config_dir / "logs"))
    config['output'] = {'directory': str(temp_config_dir / "out")}
    config['engine'] = dict(config['engine'], enumeration_budget=2 ** 20,
                            search_node_budget=2_000_000, matrix_budget=16)
    config_path = temp_config_dir / "config.yml"
    with open(config_path, 'w') as f:
        yaml.dump(config, f)
    monkeypatch.chdir(temp_config_dir)
    return temp_config_dir


# Algebraic fixtures

@pytest.fixture
def z2z2():
    return FinAbGroup((2, 2))


@pytest.fixture
def beta_z2z2(z2z2):
    """Nonsingular bicharacter on Z_2 x Z_2"""
    return Bicharacter.from_lower(z2z2, [[1]], N=2)


@pytest.fixture
def sl2_system(beta_z2z2):
    group = beta_z2z2.group
    roots = frozenset(g for g in group.elements() if not g.is_zero())
    return SkewRootSystem(beta_z2z2, RootKind.LIE, roots)


@pytest.fixture
def gl2_jordan_system(beta_z2z2):
    return SkewRootSystem(beta_z2z2, RootKind.JORDAN, frozenset(beta_z2z2.group.elements()))


@pytest.fixture
def beta_z3z3():
    return Bicharacter.from_lower(FinAbGroup((3, 3)), [[1]], N=3)
