#!/usr/bin/env python3
"""
Export Manager for the skew root system engine
Writes text exports (bicharacters, root systems, structure constants, censuses)
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from config_manager import as_bool
from galgebra import GradedAlgebra, format_structure_constants
from skewroot import SkewRootSystem, format_root_system
from symplectic import Bicharacter, format_bicharacter

MAX_FILENAME_LENGTH = 255
EXPORT_KINDS = ('bicharacter', 'rootsystem', 'structure_constants', 'census', 'report')


class ExportError(Exception):
    """Raised when an export file cannot be written"""


class ExportManager:
    """Writes byte-deterministic export files into one output directory"""

    def __init__(self, output_config: Dict[str, Any], logger: Optional[logging.Logger] = None):
        self.output_config = output_config or {}
        self.logger = logger or logging.getLogger("export_manager")
        self.output_path = Path(self.output_config.get('directory') or './out')
        self.overwrite = as_bool(self.output_config.get('overwrite', True), True)
        self.written: List[Path] = []

    def _ensure_directory(self):
        try:
            self.output_path.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ExportError(f"Cannot create output directory {self.output_path}: {e}")

    def _sanitize_filename(self, filename: str) -> str:
        """Sanitize filename to prevent path traversal and shell-hostile names"""
        filename = ''.join(char for char in filename if ord(char) >= 32)

        forbidden_chars = ['/', '\\', '..', '~', '|', '&', ';', '`', '$', '<', '>', '"', "'", ':', '?', '*', ' ']
        for char in forbidden_chars:
            filename = filename.replace(char, '_')

        if len(filename) > MAX_FILENAME_LENGTH:
            name, ext = filename.rsplit('.', 1) if '.' in filename else (filename, '')
            filename = name[:MAX_FILENAME_LENGTH - 5] + ('.' + ext if ext else '')

        filename = filename.strip('. ')
        return filename or "export.txt"

    def export_name(self, stem: str, kind: str) -> str:
        """File name for an export of the given kind, e.g. quad_f1_2_lie.structure_constants.txt"""
        if kind not in EXPORT_KINDS:
            raise ExportError(f"Unknown export kind: {kind}")
        return self._sanitize_filename(f"{stem}.{kind}.txt")

    def write_text(self, filename: str, text: str) -> Path:
        """Write text with LF line endings as UTF-8; identical text gives identical bytes"""
        self._ensure_directory()
        path = self.output_path / self._sanitize_filename(filename)
        if path.exists() and not self.overwrite:
            raise ExportError(f"Refusing to overwrite existing export {path}")
        if not text.endswith('\n'):
            text += '\n'
        try:
            with open(path, 'w', encoding='utf-8', newline='\n') as handle:
                handle.write(text)
        except OSError as e:
            raise ExportError(f"Cannot write {path}: {e}")
        self.written.append(path)
        self.logger.info(f"💾 Wrote {path} ({len(text.encode('utf-8'))} bytes)")
        return path

    def export_bicharacter(self, beta: Bicharacter, filename: str) -> Path:
        return self.write_text(filename, format_bicharacter(beta))

    def export_root_system(self, system: SkewRootSystem, filename: str) -> Path:
        return self.write_text(filename, format_root_system(system))

    def export_structure_constants(self, algebra: GradedAlgebra, filename: str) -> Path:
        return self.write_text(filename, format_structure_constants(algebra))

    def export_census(self, census: str, filename: str) -> Path:
        return self.write_text(filename, census)

    def get_export_statistics(self) -> Dict[str, Any]:
        """Files written in this run and their total size"""
        stats = {'files': 0, 'total_bytes': 0}
        for path in self.written:
            if path.is_file():
                stats['files'] += 1
                stats['total_bytes'] += path.stat().st_size
        return stats
