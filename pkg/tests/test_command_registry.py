"""
Tests for CommandRegistry component
"""

import logging
from unittest.mock import MagicMock

from cli import CommandRegistry


class TestCommandRegistry:
    """Test CommandRegistry functionality"""

    def setup_method(self):
        """Setup test dependencies"""
        self.logger = logging.getLogger('test')
        self.engine = MagicMock()
        self.command_registry = CommandRegistry(self.logger, self.engine)

    def test_command_registry_initialization(self):
        assert self.command_registry.logger == self.logger
        for cmd in ['validate', 'analyze', 'enumerate', 'family', 'export']:
            assert cmd in self.command_registry.commands
            assert callable(self.command_registry.commands[cmd])

    def test_commands_dispatch_to_engine(self):
        args = MagicMock()
        self.engine.cmd_validate.return_value = 1
        assert self.command_registry.get_command('validate')(args) == 1
        self.engine.cmd_validate.assert_called_once_with(args)

    def test_register_command(self):
        def census_summary(args):
            return 0

        self.command_registry.register_command('summary', census_summary)
        assert self.command_registry.commands['summary'] is census_summary

    def test_get_command(self):
        assert callable(self.command_registry.get_command('family'))
        assert self.command_registry.get_command('nonexistent') is None

    def test_list_commands(self):
        commands = self.command_registry.list_commands()
        assert commands == ['validate', 'analyze', 'enumerate', 'family', 'export']
