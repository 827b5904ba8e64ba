"""
OR-Library job-shop instance files

Accepted format: the first non-comment line is 'n m', followed by n job
lines of m 'machine duration' pairs. Blank lines and lines starting with '#'
are ignored. Machine indices may be 0-based or 1-based; the base is detected
from the file. The OR-Library multi-instance file ('instance la01' headers,
a free-text description line and '+++' separators) is also understood.
"""

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from core.error_handler import ErrorFactory, ParseError
from core.jobshop import JsspInstance, Operation, lower_bound, upper_bound

logger = logging.getLogger(__name__)

# Best-known makespans of the Lawrence LA01-LA21 instances
_BEST_KNOWN: Dict[str, int] = {
    'LA01': 666, 'LA02': 655, 'LA03': 597, 'LA04': 590, 'LA05': 593,
    'LA06': 926, 'LA07': 890, 'LA08': 863, 'LA09': 951, 'LA10': 958,
    'LA11': 1222, 'LA12': 1039, 'LA13': 1150, 'LA14': 1292, 'LA15': 1207,
    'LA16': 945, 'LA17': 784, 'LA18': 848, 'LA19': 842, 'LA20': 902,
    'LA21': 1046,
}

INSTANCE_SUFFIXES = {'.txt', '.jsp', '.jss', '.dat', ''}

_TOKEN = re.compile(r'\S+')
_INTEGER = re.compile(r'[+-]?\d+')
_MULTI_HEADER = re.compile(r'^\s*instance\s+(\S+)', re.IGNORECASE)
_SIZE_LINE = re.compile(r'^\s*\d+\s+\d+\s*$')


def best_known_registry() -> Dict[str, int]:
    """Name -> best-known makespan (copy)"""
    return dict(_BEST_KNOWN)


def normalize_name(name: str) -> str:
    return name.strip().upper()


@dataclass(frozen=True)
class InstanceRecord:
    """A named instance with its best-known makespan, when registered"""
    name: str
    instance: JsspInstance
    best_known: Optional[int] = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("InstanceRecord name must be non-empty")


@dataclass
class _Token:
    text: str
    line: int
    column: int


class InstanceParser:
    """
    Tokenizing parser for the job-shop instance format.
    Reports errors with 1-based line and column numbers.
    """

    def __init__(self, file_path: Optional[str] = None, line_offset: int = 0):
        self.file_path = file_path
        self.line_offset = line_offset

    def _lines(self, text: str) -> List[Tuple[int, str]]:
        lines = []
        for number, line in enumerate(text.splitlines(), start=1 + self.line_offset):
            stripped = line.strip()
            if not stripped or stripped.startswith('#'):
                continue
            lines.append((number, line))
        return lines

    def _integers(self, number: int, line: str) -> List[Tuple[int, _Token]]:
        values = []
        for match in _TOKEN.finditer(line):
            token = _Token(match.group(), number, match.start() + 1)
            if not _INTEGER.fullmatch(token.text):
                raise ErrorFactory.bad_token(token.text, token.line, token.column, self.file_path)
            values.append((int(token.text), token))
        return values

    def parse(self, text: str, name: Optional[str] = None) -> JsspInstance:
        lines = self._lines(text)
        if not lines:
            raise ParseError("Empty instance: no header line found",
                             file_path=self.file_path, line_number=1 + self.line_offset)

        header_number, header = lines[0]
        header_values = self._integers(header_number, header)
        if len(header_values) != 2 or header_values[0][0] < 1 or header_values[1][0] < 1:
            raise ErrorFactory.bad_header(header, header_number, self.file_path)
        n_jobs, n_machines = header_values[0][0], header_values[1][0]

        job_lines = lines[1:1 + n_jobs]
        if len(job_lines) < n_jobs:
            last = lines[-1][0]
            raise ErrorFactory.missing_jobs(len(job_lines), n_jobs, last, self.file_path)
        if len(lines) > 1 + n_jobs:
            extra_number, _ = lines[1 + n_jobs]
            raise ParseError(
                f"Unexpected content after {n_jobs} job lines",
                file_path=self.file_path, line_number=extra_number, column_number=1,
                suggestion="Remove trailing lines or fix the job count in the header"
            )

        raw: List[List[Tuple[_Token, int, _Token, int]]] = []
        for job, (number, line) in enumerate(job_lines):
            values = self._integers(number, line)
            if len(values) != 2 * n_machines:
                raise ErrorFactory.wrong_token_count(job, len(values), 2 * n_machines,
                                                     number, self.file_path)
            pairs = []
            for k in range(n_machines):
                (machine, machine_token), (duration, duration_token) = values[2 * k], values[2 * k + 1]
                pairs.append((machine_token, machine, duration_token, duration))
            raw.append(pairs)

        base = self._detect_base(raw, n_machines)

        routes = []
        for job, pairs in enumerate(raw):
            seen = set()
            route = []
            for machine_token, machine, duration_token, duration in pairs:
                machine -= base
                if not 0 <= machine < n_machines:
                    raise ErrorFactory.machine_out_of_range(
                        machine + base, n_machines, machine_token.line, machine_token.column,
                        self.file_path)
                if machine in seen:
                    raise ErrorFactory.duplicate_machine(
                        job, machine + base, machine_token.line, machine_token.column,
                        self.file_path)
                if duration < 0:
                    raise ErrorFactory.negative_duration(
                        job, duration, duration_token.line, duration_token.column,
                        self.file_path)
                seen.add(machine)
                route.append(Operation(machine, duration))
            routes.append(tuple(route))

        return JsspInstance(tuple(routes), name)

    @staticmethod
    def _detect_base(raw, n_machines: int) -> int:
        """1 if any index equals m and none is 0; 0 otherwise"""
        machines = {machine for pairs in raw for _, machine, _, _ in pairs}
        if n_machines in machines and 0 not in machines:
            return 1
        return 0


def parse_instance(text: str, name: Optional[str] = None,
                   file_path: Optional[str] = None) -> JsspInstance:
    """Parse one instance in the accepted format"""
    return InstanceParser(file_path=file_path).parse(text, name)


def serialize_instance(inst: JsspInstance) -> str:
    """Accepted format with 0-based machines, one job per line"""
    lines = [f"{inst.n_jobs} {inst.n_machines}"]
    for route in inst.routes:
        lines.append(" ".join(f"{op.machine} {op.duration}" for op in route))
    return "\n".join(lines) + "\n"


def is_multi_instance(text: str) -> bool:
    return any(_MULTI_HEADER.match(line) for line in text.splitlines())


def split_multi_instance(text: str) -> List[Tuple[str, str, int]]:
    """
    Split an OR-Library multi-instance file into (name, body, line_offset).

    A block starts at an 'instance <name>' line; its body begins at the first
    'n m' line after it and ends at a '+++' separator or the next header.
    """
    blocks: List[Tuple[str, str, int]] = []
    lines = text.splitlines()
    name: Optional[str] = None
    body: List[str] = []
    offset = 0

    def flush():
        if name is not None:
            blocks.append((name, "\n".join(body), offset))

    for number, line in enumerate(lines):
        header = _MULTI_HEADER.match(line)
        if header:
            flush()
            name, body, offset = header.group(1), [], number + 1
            continue
        if name is None:
            continue
        if line.strip().startswith('+'):
            if body:
                flush()
                name, body = None, []
            continue
        if not body:
            if _SIZE_LINE.match(line):
                offset = number
                body.append(line)
            continue
        body.append(line)

    flush()
    return blocks


def _record(name: str, inst: JsspInstance, registry: Dict[str, int]) -> InstanceRecord:
    key = normalize_name(name)
    best = registry.get(key)
    if best is not None and not lower_bound(inst) <= best <= upper_bound(inst):
        logger.warning("Best-known value %d for %s is outside [%d, %d]; ignoring it",
                       best, key, lower_bound(inst), upper_bound(inst))
        best = None
    return InstanceRecord(key, JsspInstance(inst.routes, key), best)


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding='ascii')
    except FileNotFoundError:
        raise ErrorFactory.file_error(path, "file not found")
    except PermissionError:
        raise ErrorFactory.file_error(path, "permission denied")
    except UnicodeDecodeError:
        raise ErrorFactory.file_error(path, "not an ASCII text file")
    except OSError as e:
        raise ErrorFactory.file_error(path, str(e))


def load_file(path: Union[str, Path]) -> List[InstanceRecord]:
    """Records from one file; a single-instance file is named after its stem"""
    path = Path(path)
    text = _read(path)
    registry = best_known_registry()

    if is_multi_instance(text):
        records = []
        for name, body, offset in split_multi_instance(text):
            inst = InstanceParser(file_path=str(path), line_offset=offset).parse(body)
            records.append(_record(name, inst, registry))
        return records

    inst = parse_instance(text, file_path=str(path))
    return [_record(path.stem, inst, registry)]


def load_suite(path: Union[str, Path]) -> List[InstanceRecord]:
    """Records from a directory of instance files or one (multi-)instance file, sorted by name"""
    path = Path(path)
    if not path.exists():
        raise ErrorFactory.file_error(path, "path does not exist")

    if path.is_file():
        records = load_file(path)
    else:
        records = []
        for child in sorted(path.iterdir()):
            if not child.is_file() or child.name.startswith(('.', '_')):
                continue
            if child.suffix.lower() not in INSTANCE_SUFFIXES:
                logger.debug("Skipping non-instance file %s", child)
                continue
            records.extend(load_file(child))

    records.sort(key=lambda r: r.name)
    logger.info("Loaded %d instance(s) from %s", len(records), path)
    return records


def find_record(records: List[InstanceRecord], name: str) -> Optional[InstanceRecord]:
    key = normalize_name(name)
    return next((r for r in records if r.name == key), None)
