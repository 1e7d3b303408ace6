#!/usr/bin/env python3
"""
Configuration Manager for the skew root system engine
Loads config.yml with .env support and ${VAR} / ${VAR:-default} substitution
"""

import os
import re
import yaml
import logging
from typing import Dict, Any
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Constants
DEFAULT_RETENTION_DAYS = 30
DEFAULT_ENUMERATION_BUDGET = 2 ** 20
DEFAULT_SEARCH_NODE_BUDGET = 2_000_000
DEFAULT_MATRIX_BUDGET = 16
DEFAULT_ANALYSIS_TIMEOUT = 600

ENV_PATTERN = re.compile(r'\$\{([^}]+)\}')
REQUIRED_SECTIONS = ('engine', 'logging', 'output')
BUDGET_KEYS = ('enumeration_budget', 'search_node_budget', 'matrix_budget')


def substitute_env_vars(value: Any) -> Any:
    """
    Recursively substitute environment variables in configuration values
    Supports ${VAR_NAME} and ${VAR_NAME:-default_value} syntax
    """
    if isinstance(value, dict):
        return {k: substitute_env_vars(v) for k, v in value.items()}
    if isinstance(value, list):
        return [substitute_env_vars(item) for item in value]
    if not isinstance(value, str):
        return value

    def replace_var(match):
        var_expr = match.group(1)
        var_name, has_default, default_value = var_expr.partition(':-')
        var_name = var_name.strip()
        if not var_name:
            return match.group(0)  # malformed, left as written

        env_value = os.getenv(var_name)
        if has_default:
            return default_value if env_value in (None, '') else env_value
        if env_value is None:
            logger.warning(f"Environment variable {var_name} not found")
            return match.group(0)
        return env_value

    return ENV_PATTERN.sub(replace_var, value)


def as_bool(value: Any, default: bool = False) -> bool:
    """YAML booleans arrive as strings after substitution"""
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ('true', 'yes', 'on', '1'):
            return True
        if text in ('false', 'no', 'off', '0'):
            return False
        return default
    if value is None:
        return default
    return bool(value)


def default_config() -> Dict[str, Any]:
    return {
        'engine': {
            'name': 'skewroot-engine',
            'enumeration_budget': DEFAULT_ENUMERATION_BUDGET,
            'search_node_budget': DEFAULT_SEARCH_NODE_BUDGET,
            'matrix_budget': DEFAULT_MATRIX_BUDGET,
            'jobs': 1,
            'analysis_timeout': DEFAULT_ANALYSIS_TIMEOUT,
            'random_seed': 0,
        },
        'logging': {
            'daily_rotation': True,
            'findings_log_separate': True,
            'retention_days': DEFAULT_RETENTION_DAYS,
            'log_level': 'INFO',
            'log_dir': './logs',
        },
        'output': {
            'directory': './out',
            'overwrite': True,
        },
    }


class ConfigManager:
    """Engine configuration from YAML with environment variable substitution"""

    def __init__(self, config_path: str = "config.yml", env_file: str = ".env"):
        self.config_path = config_path
        self.env_file = env_file
        self.config: Dict[str, Any] = {}

        self._load_env_file()
        self._load_config()

    def _load_env_file(self):
        if os.path.exists(self.env_file):
            load_dotenv(self.env_file)
            logger.info(f"Loaded environment variables from {self.env_file}")
        else:
            logger.debug(f"Environment file {self.env_file} not found")

    def _substitute_env_vars(self, value: Any) -> Any:
        return substitute_env_vars(value)

    def _load_config(self):
        if not os.path.exists(self.config_path):
            logger.warning(f"Configuration file {self.config_path} not found")
            self.config = default_config()
            logger.warning("Using default configuration")
            return

        try:
            with open(self.config_path, 'r') as file:
                raw_config = yaml.safe_load(file) or {}

            self.config = self._substitute_env_vars(raw_config)
            self._validate_config()
            logger.info(f"Successfully loaded configuration from {self.config_path}")

        except yaml.YAMLError as e:
            logger.error(f"Error parsing YAML configuration: {e}")
            raise
        except Exception as e:
            logger.error(f"Error loading configuration: {e}")
            raise

    def _validate_config(self):
        """Validate configuration structure and budget values"""
        if not isinstance(self.config, dict):
            raise ValueError("Configuration root must be a mapping")

        for section in REQUIRED_SECTIONS:
            if section not in self.config:
                logger.error(f"Missing required configuration section: {section}")
                raise ValueError(f"Missing configuration section: {section}")

        for section in REQUIRED_SECTIONS:
            self.config[section] = self.config[section] or {}

        engine = self.config['engine']
        for key in BUDGET_KEYS:
            if key not in engine:
                continue
            try:
                value = int(engine[key])
            except (TypeError, ValueError):
                raise ValueError(f"engine.{key} must be an integer, got {engine[key]!r}")
            if value <= 0:
                raise ValueError(f"engine.{key} must be positive, got {value}")
            engine[key] = value

        jobs = engine.get('jobs', 1)
        try:
            if int(jobs) < 1:
                raise ValueError(f"engine.jobs must be at least 1, got {jobs}")
        except (TypeError, ValueError) as e:
            raise ValueError(f"Invalid engine.jobs: {e}")

        log_level = str(self.config['logging'].get('log_level', 'INFO')).upper()
        if log_level not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            logger.warning(f"Unknown log level {log_level}, falling back to INFO")
            self.config['logging']['log_level'] = 'INFO'

        logger.info("Configuration validation passed")

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation

        Args:
            key_path: Dot-separated path to configuration value (e.g., 'engine.jobs')
            default: Default value if key not found
        """
        value = self.config
        try:
            for key in key_path.split('.'):
                value = value[key]
            return value
        except (KeyError, TypeError):
            logger.debug(f"Configuration key not found: {key_path}")
            return default

    def get_int(self, key_path: str, default: int) -> int:
        value = self.get(key_path, default)
        try:
            return int(value)
        except (TypeError, ValueError):
            logger.warning(f"Configuration value {key_path}={value!r} is not an integer, using {default}")
            return default

    def get_bool(self, key_path: str, default: bool) -> bool:
        return as_bool(self.get(key_path, default), default)

    def get_engine_config(self) -> Dict[str, Any]:
        return self.config.get('engine', {})

    def get_logging_config(self) -> Dict[str, Any]:
        return self.config.get('logging', {})

    def get_output_config(self) -> Dict[str, Any]:
        return self.config.get('output', {})

    def reload(self):
        logger.info("Reloading configuration")
        self._load_env_file()
        self._load_config()

    def to_dict(self) -> Dict[str, Any]:
        return self.config.copy()
