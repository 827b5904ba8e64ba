"""
Error handling for PSO-JobShop
Provides clear, actionable error messages with context
"""

from typing import Dict, Any, List, Optional, Sequence
from pathlib import Path
from enum import Enum


# Process exit codes used by the CLI
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_RUNTIME = 3


class ErrorSeverity(Enum):
    """Error severity levels"""
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


class ErrorCategory(Enum):
    """Error categories for better organization"""
    PARSE = "parse"
    CONFIGURATION = "configuration"
    PARAMETER = "parameter"
    CONTRACT = "contract"
    NUMERICAL = "numerical"
    IO = "io"
    SIZE_GUARD = "size_guard"
    RUNTIME = "runtime"


class JobShopError(Exception):
    """Base error carrying location, suggestion and context"""

    category: ErrorCategory = ErrorCategory.RUNTIME
    exit_code: int = EXIT_RUNTIME

    def __init__(self, message: str, *,
                 file_path: Optional[str] = None,
                 line_number: Optional[int] = None,
                 column_number: Optional[int] = None,
                 suggestion: Optional[str] = None,
                 context: Optional[Dict[str, Any]] = None,
                 severity: ErrorSeverity = ErrorSeverity.ERROR):
        super().__init__(message)
        self.message = message
        self.file_path = str(file_path) if file_path is not None else None
        self.line_number = line_number
        self.column_number = column_number
        self.suggestion = suggestion
        self.context = context or {}
        self.severity = severity

    @property
    def location(self) -> Optional[str]:
        """file:line:column, or whichever parts are known"""
        parts: List[str] = []
        if self.file_path:
            parts.append(self.file_path)
        if self.line_number is not None:
            parts.append(str(self.line_number))
            if self.column_number is not None:
                parts.append(str(self.column_number))
        if not parts:
            return None
        if not self.file_path:
            return "line " + ":".join(parts)
        return ":".join(parts)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        return {
            'message': self.message,
            'category': self.category.value,
            'severity': self.severity.value,
            'file_path': self.file_path,
            'line_number': self.line_number,
            'column_number': self.column_number,
            'context': self.context,
            'suggestion': self.suggestion,
            'exit_code': self.exit_code,
        }

    def format_terminal(self, verbose: bool = False) -> str:
        """Format error for terminal output"""
        icon = "❌" if self.severity == ErrorSeverity.ERROR else "⚠️" if self.severity == ErrorSeverity.WARNING else "ℹ️"
        parts = [f"{icon} {self.severity.value.upper()}: {self.message}"]

        if self.location:
            parts.append(f"  📍 Location: {self.location}")

        if self.suggestion:
            parts.append(f"  💡 Suggestion: {self.suggestion}")

        if verbose and self.context:
            parts.append("  📋 Context:")
            for key, value in self.context.items():
                parts.append(f"     {key}: {value}")

        return "\n".join(parts)

    def __str__(self) -> str:
        if self.location:
            return f"{self.location}: {self.message}"
        return self.message


class ParseError(JobShopError):
    """Malformed instance text"""
    category = ErrorCategory.PARSE
    exit_code = EXIT_PARSE


class ConfigurationError(JobShopError):
    """Invalid configuration, CLI option or training set"""
    category = ErrorCategory.CONFIGURATION
    exit_code = EXIT_USAGE


class ParameterDomainError(JobShopError):
    """A behavioral parameter lies outside its admissible range"""
    category = ErrorCategory.PARAMETER
    exit_code = EXIT_USAGE


class ContractViolation(JobShopError):
    """A caller broke an operation's precondition (lengths, shapes)"""
    category = ErrorCategory.CONTRACT
    exit_code = EXIT_RUNTIME


class NumericalFaultError(JobShopError):
    """Non-finite values appeared during an update"""
    category = ErrorCategory.NUMERICAL
    exit_code = EXIT_RUNTIME


class SizeGuardError(JobShopError):
    """Instance too large for exhaustive enumeration"""
    category = ErrorCategory.SIZE_GUARD
    exit_code = EXIT_USAGE


class SuiteLoadError(JobShopError):
    """I/O failure while reading instance files"""
    category = ErrorCategory.IO
    exit_code = EXIT_USAGE


class ErrorFactory:
    """Factory for creating common error types with helpful messages"""

    @staticmethod
    def bad_token(token: str, line_number: int, column_number: int,
                  file_path: Optional[str] = None) -> ParseError:
        """Create error for a token that is not a decimal integer"""
        return ParseError(
            f"Expected a decimal integer, found '{token}'",
            file_path=file_path,
            line_number=line_number,
            column_number=column_number,
            suggestion="Instance files contain only whitespace-separated integers and '#' comments",
            context={'token': token}
        )

    @staticmethod
    def bad_header(line: str, line_number: int, file_path: Optional[str] = None) -> ParseError:
        """Create error for a malformed 'n m' header"""
        return ParseError(
            f"Malformed header '{line.strip()}': expected '<jobs> <machines>'",
            file_path=file_path,
            line_number=line_number,
            column_number=1,
            suggestion="The first non-comment line must hold two positive integers",
            context={'line': line.strip()}
        )

    @staticmethod
    def wrong_token_count(job: int, found: int, expected: int, line_number: int,
                          file_path: Optional[str] = None) -> ParseError:
        """Create error for a job line with the wrong number of tokens"""
        return ParseError(
            f"Job {job} line has {found} tokens, expected {expected}",
            file_path=file_path,
            line_number=line_number,
            column_number=1,
            suggestion="Each job line lists one 'machine duration' pair per machine",
            context={'job': job, 'found': found, 'expected': expected}
        )

    @staticmethod
    def missing_jobs(found: int, expected: int, line_number: int,
                     file_path: Optional[str] = None) -> ParseError:
        """Create error for a truncated instance"""
        return ParseError(
            f"Instance declares {expected} jobs but only {found} job lines were found",
            file_path=file_path,
            line_number=line_number,
            context={'found': found, 'expected': expected}
        )

    @staticmethod
    def machine_out_of_range(machine: int, n_machines: int, line_number: int,
                             column_number: int, file_path: Optional[str] = None) -> ParseError:
        """Create error for a machine index outside the declared range"""
        return ParseError(
            f"Machine index {machine} out of range for {n_machines} machines",
            file_path=file_path,
            line_number=line_number,
            column_number=column_number,
            suggestion=f"Use 0..{n_machines - 1} (0-based) or 1..{n_machines} (1-based) consistently",
            context={'machine': machine, 'n_machines': n_machines}
        )

    @staticmethod
    def duplicate_machine(job: int, machine: int, line_number: int, column_number: int,
                          file_path: Optional[str] = None) -> ParseError:
        """Create error for a job visiting the same machine twice"""
        return ParseError(
            f"Job {job} visits machine {machine} more than once",
            file_path=file_path,
            line_number=line_number,
            column_number=column_number,
            suggestion="Every job must visit each machine exactly once",
            context={'job': job, 'machine': machine}
        )

    @staticmethod
    def negative_duration(job: int, duration: int, line_number: int, column_number: int,
                          file_path: Optional[str] = None) -> ParseError:
        """Create error for a negative processing time"""
        return ParseError(
            f"Job {job} has negative duration {duration}",
            file_path=file_path,
            line_number=line_number,
            column_number=column_number,
            context={'job': job, 'duration': duration}
        )

    @staticmethod
    def unknown_label(label: str, known: Sequence[str]) -> ConfigurationError:
        """Create error for an unknown parameter-set label"""
        return ConfigurationError(
            f"Unknown parameter set '{label}'",
            suggestion=f"Known labels are: {', '.join(known)}; or pass four numbers 'a1,a2,w,b'",
            context={'label': label, 'known_labels': list(known)}
        )

    @staticmethod
    def odd_population(size: int) -> ConfigurationError:
        """Create error for a population that cannot be paired"""
        return ConfigurationError(
            f"Population size must be even, got {size}",
            suggestion="One-point crossover pairs parents; use an even population size",
            context={'population_size': size}
        )

    @staticmethod
    def unresolved_training(names: Sequence[str], available: Sequence[str]) -> ConfigurationError:
        """Create error for training instances missing from the suite"""
        shown = ', '.join(available[:10]) + (' ...' if len(available) > 10 else '')
        return ConfigurationError(
            f"Training instance(s) not found in suite: {', '.join(names)}",
            suggestion=f"Available instances: {shown or '(suite is empty)'}",
            context={'missing': list(names), 'available': list(available)}
        )

    @staticmethod
    def invalid_beta(beta: float) -> ParameterDomainError:
        """Create error for a velocity-restriction fraction outside [0.01, 1.0]"""
        return ParameterDomainError(
            f"beta must lie in [0.01, 1.0], got {beta}",
            suggestion="The velocity restriction fraction is floored at 0.01",
            context={'beta': beta}
        )

    @staticmethod
    def length_mismatch(what: str, found: int, expected: int) -> ContractViolation:
        """Create error for vectors of unexpected length"""
        return ContractViolation(
            f"{what}: length {found} does not match expected {expected}",
            context={'found': found, 'expected': expected}
        )

    @staticmethod
    def file_error(path: Path, reason: str) -> SuiteLoadError:
        """Create error for an unreadable instance path"""
        return SuiteLoadError(
            f"Cannot read {path}: {reason}",
            file_path=str(path),
            suggestion="Check that the path exists and is readable"
        )
