"""Family Registry Module.

This module loads the table of families from its JSON document, checks each
record against the schema, and verifies every family by expanding all of its
factorizations.

Each family record carries one or more factorizations of the same Conway
function, written in the notation of :mod:`conway_table.notation`. A family
verifies when:

- all factorizations expand to one polynomial;
- that polynomial has every coefficient 1 and every exponent 1;
- its value with every variable set to 1 equals its term count;
- it uses every variable the factorizations mention;
- its term count (the Conway number) matches the expected count.

The ``as_printed`` texts keep the captions exactly as published, misprints
included, so that the misprints can be demonstrated by verifying them.

Example:
    >>> registry = FamilyRegistry.load(default_registry_path())
    >>> report = verify_family(registry.get("c3-trefoil-1"))
    >>> print(report.canonical, report.seed_count)
    a1*a2 + a1*a3 + a2*a3 3
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import pandas as pd

from .exceptions import (
    DimensionError,
    DuplicateFamilyError,
    NotationError,
    RegistrySchemaError,
    UnknownFamilyError,
)
from .notation import (
    IdentityAssertion,
    Product,
    expand,
    parse,
    parse_poly,
    poly_value,
    to_chain,
    variables,
)
from .oracle import naive_expand, point_check, terms_equal
from .polyring import Polynomial, all_ones
from .tangle2 import chain_eval

logger = logging.getLogger(__name__)

PROVENANCES = ("paper", "derived")

# Conway numbers stated in the published section headings, by seed label.
STATED_COUNTS = {"6_3^2": 12, "6_2": 11, "6_3": 13, "C_2^3": 16}


def default_registry_path() -> Path:
    """Path of the registry document shipped with the package."""
    return Path(str(resources.files("conway_table") / "data" / "families.json"))


@dataclass(frozen=True)
class Erratum:
    """A correction applied to a published caption.

    Attributes:
        original (str): The fragment as printed.
        corrected (str): The fragment used in ``expressions``.
        note (str): What was wrong and how the correction was fixed.
    """

    original: str
    corrected: str
    note: str = ""


@dataclass(frozen=True)
class ExpectedTerms:
    """Expected Conway number of a family.

    Attributes:
        value (int): Expected term count of the Conway function.
        provenance (str): ``"paper"`` when the count is stated in print,
            ``"derived"`` when it was computed from the factorizations.
    """

    value: int
    provenance: str


@dataclass(frozen=True)
class FamilyRecord:
    """One family of the table.

    Attributes:
        id (str): Stable identifier ``c<conways>-<seed>-<case>``.
        seed_label (str): The seed knot or link as printed, e.g. ``5_1^2``.
        conway_count (int): Number of conways, 1 to 6.
        expressions (Tuple[str, ...]): Corrected factorizations, all equal.
        as_printed (Tuple[str, ...]): Factorizations exactly as published.
        errata (Tuple[Erratum, ...]): Corrections turning ``as_printed``
            into ``expressions``.
        expected_terms (Optional[ExpectedTerms]): Expected Conway number.
        seed_name (str): The seed as named in prose.
        printed_function (Optional[str]): The Conway function when the
            caption states it explicitly.
    """

    id: str
    seed_label: str
    conway_count: int
    expressions: Tuple[str, ...]
    as_printed: Tuple[str, ...] = ()
    errata: Tuple[Erratum, ...] = ()
    expected_terms: Optional[ExpectedTerms] = None
    seed_name: str = ""
    printed_function: Optional[str] = None

    def __post_init__(self):
        if not self.as_printed:
            object.__setattr__(self, "as_printed", tuple(self.expressions))

    @classmethod
    def from_dict(cls, data: Dict[str, Any], index: Optional[int] = None) -> "FamilyRecord":
        """Build a record from its JSON object, checking the schema.

        Raises:
            RegistrySchemaError: Naming the first offending field.
        """
        if not isinstance(data, dict):
            raise RegistrySchemaError("record must be an object", "<record>", index)

        def required(name: str, kind: type) -> Any:
            if name not in data:
                raise RegistrySchemaError("missing", name, index)
            value = data[name]
            if not isinstance(value, kind) or isinstance(value, bool):
                raise RegistrySchemaError(f"must be {kind.__name__}", name, index)
            return value

        def strings(name: str, value: Any) -> Tuple[str, ...]:
            if not isinstance(value, list) or not all(isinstance(s, str) for s in value):
                raise RegistrySchemaError("must be a list of strings", name, index)
            return tuple(value)

        family_id = required("id", str)
        seed_label = required("seed_label", str)
        conway_count = required("conway_count", int)
        if not 1 <= conway_count <= 6:
            raise RegistrySchemaError(f"must be in 1..6, got {conway_count}", "conway_count", index)
        expressions = strings("expressions", required("expressions", list))
        if not expressions:
            raise RegistrySchemaError("must not be empty", "expressions", index)
        as_printed = strings("as_printed", data.get("as_printed", list(expressions)))

        errata = []
        for item in data.get("errata", []):
            if not isinstance(item, dict) or not {"original", "corrected"} <= set(item):
                raise RegistrySchemaError("entries need 'original' and 'corrected'", "errata", index)
            errata.append(Erratum(item["original"], item["corrected"], item.get("note", "")))

        expected = None
        if data.get("expected_terms") is not None:
            raw = data["expected_terms"]
            if not isinstance(raw, dict) or not isinstance(raw.get("value"), int):
                raise RegistrySchemaError("needs an integer 'value'", "expected_terms", index)
            if raw.get("provenance") not in PROVENANCES:
                raise RegistrySchemaError(
                    f"provenance must be one of {PROVENANCES}", "expected_terms", index
                )
            expected = ExpectedTerms(raw["value"], raw["provenance"])
            stated = STATED_COUNTS.get(seed_label)
            if expected.provenance == "paper" and expected.value != stated:
                raise RegistrySchemaError(
                    f"value {expected.value} is not a published count for seed {seed_label}",
                    "expected_terms",
                    index,
                )

        printed = data.get("printed_function")
        if printed is not None and not isinstance(printed, str):
            raise RegistrySchemaError("must be a string", "printed_function", index)

        record = cls(
            id=family_id,
            seed_label=seed_label,
            conway_count=conway_count,
            expressions=expressions,
            as_printed=as_printed,
            errata=tuple(errata),
            expected_terms=expected,
            seed_name=data.get("seed_name", ""),
            printed_function=printed,
        )
        record.check_variables(index)
        return record

    def check_variables(self, index: Optional[int] = None) -> None:
        """Check that the expressions use exactly ``conway_count`` variables."""
        used = set()
        for text in self.expressions:
            try:
                used.update(variables(parse(text)))
            except NotationError as err:
                raise RegistrySchemaError(str(err), "expressions", index) from err
        if len(used) != self.conway_count:
            raise RegistrySchemaError(
                f"conway_count is {self.conway_count} but the expressions use "
                f"{len(used)} variable(s)",
                "conway_count",
                index,
            )

    def to_dict(self) -> Dict[str, Any]:
        """Inverse of :meth:`from_dict`; ``as_printed`` is written only when it differs."""
        data: Dict[str, Any] = {
            "id": self.id,
            "seed_label": self.seed_label,
            "seed_name": self.seed_name,
            "conway_count": self.conway_count,
        }
        if self.printed_function is not None:
            data["printed_function"] = self.printed_function
        data["expressions"] = list(self.expressions)
        if self.as_printed != self.expressions:
            data["as_printed"] = list(self.as_printed)
        data["errata"] = [
            {"original": e.original, "corrected": e.corrected, "note": e.note} for e in self.errata
        ]
        if self.expected_terms is not None:
            data["expected_terms"] = {
                "value": self.expected_terms.value,
                "provenance": self.expected_terms.provenance,
            }
        return data


def load(path: Union[str, Path]) -> List[FamilyRecord]:
    """Load and check a registry document.

    The document is a JSON object with a ``families`` list; a bare list of
    records is also accepted.

    Args:
        path (Union[str, Path]): Location of the document.

    Returns:
        List[FamilyRecord]: Records in document order.

    Raises:
        RegistrySchemaError: If the document or a record breaks the schema.
        DuplicateFamilyError: If two records share an id.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as err:
        raise RegistrySchemaError(f"not valid JSON ({err.msg})", "<document>") from err

    entries = document.get("families") if isinstance(document, dict) else document
    if not isinstance(entries, list):
        raise RegistrySchemaError("must be a list of records", "families")

    records = []
    seen = set()
    for index, entry in enumerate(entries):
        record = FamilyRecord.from_dict(entry, index)
        if record.id in seen:
            raise DuplicateFamilyError(f"Duplicate family id '{record.id}' at record {index}")
        seen.add(record.id)
        records.append(record)
    logger.info("loaded %d families from %s", len(records), path)
    return records


class FamilyRegistry:
    """Ordered, id-indexed collection of family records.

    Example:
        >>> registry = FamilyRegistry.load(default_registry_path())
        >>> registry.counts_by_conways()
        {1: 1, 2: 1, 3: 2, 4: 5, 5: 12, 6: 44}
    """

    def __init__(self, records: Sequence[FamilyRecord]):
        self.records: Tuple[FamilyRecord, ...] = tuple(records)
        self._by_id = {r.id: r for r in self.records}
        if len(self._by_id) != len(self.records):
            raise DuplicateFamilyError("Family ids must be unique")

    @classmethod
    def load(cls, path: Union[str, Path, None] = None) -> "FamilyRegistry":
        return cls(load(path if path is not None else default_registry_path()))

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[FamilyRecord]:
        return iter(self.records)

    def __contains__(self, family_id: str) -> bool:
        return family_id in self._by_id

    def get(self, family_id: str) -> FamilyRecord:
        """Return the record with the given id.

        Raises:
            UnknownFamilyError: If no record has that id.
        """
        try:
            return self._by_id[family_id]
        except KeyError:
            raise UnknownFamilyError(f"Unknown family id '{family_id}'") from None

    def by_seed(self) -> Dict[str, List[FamilyRecord]]:
        """Records grouped by seed label, in table order."""
        groups: Dict[str, List[FamilyRecord]] = {}
        for record in self.records:
            groups.setdefault(record.seed_label, []).append(record)
        return groups

    def counts_by_conways(self) -> Dict[int, int]:
        """Number of families for each number of conways, in ascending order."""
        counts: Dict[int, int] = {}
        for record in self.records:
            counts[record.conway_count] = counts.get(record.conway_count, 0) + 1
        return dict(sorted(counts.items()))


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of verifying one family.

    Optional checks that did not apply are ``None``.

    Attributes:
        family_id (str): Id of the verified record.
        canonical (Optional[Polynomial]): Expansion of the first branch that
            could be evaluated.
        branches_agree (bool): Every evaluated branch equals ``canonical``.
        multilinear_unit (bool): Coefficients and exponents are all 1.
        seed_count (int): Term count of ``canonical``.
        seed_value (Optional[int]): Value of ``canonical`` with every variable
            set to 1. A verified family has ``seed_value == seed_count``.
        expected_match (Optional[bool]): ``seed_count`` equals the record's
            expected count.
        mismatches (Tuple[Polynomial, ...]): ``branch - canonical`` for every
            disagreeing branch.
        chain_agree (Optional[bool]): The elementary-matrix chains agree with
            their notation expansion.
        oracle_agree (Optional[bool]): The independent oracle agrees.
        printed_match (Optional[bool]): The stated Conway function equals
            ``canonical``.
        covers_variables (bool): Every variable written appears in
            ``canonical``.
        problems (Tuple[str, ...]): Branches that could not be read or
            evaluated.
        as_printed (bool): Whether the published texts were verified.
    """

    family_id: str
    canonical: Optional[Polynomial]
    branches_agree: bool
    multilinear_unit: bool
    seed_count: int
    seed_value: Optional[int] = None
    expected_match: Optional[bool] = None
    mismatches: Tuple[Polynomial, ...] = ()
    chain_agree: Optional[bool] = None
    oracle_agree: Optional[bool] = None
    printed_match: Optional[bool] = None
    covers_variables: bool = True
    problems: Tuple[str, ...] = ()
    as_printed: bool = False

    @property
    def passed(self) -> bool:
        optional = (self.expected_match, self.chain_agree, self.oracle_agree, self.printed_match)
        return (
            self.canonical is not None
            and self.branches_agree
            and self.multilinear_unit
            and self.seed_value == self.seed_count
            and self.covers_variables
            and not self.problems
            and all(check is not False for check in optional)
        )

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready form used by ``verify --report``.

        Returns:
            Dict[str, Any]: Every field, with polynomials rendered as text,
                plus the derived ``passed`` flag.
        """
        return {
            "family_id": self.family_id,
            "canonical": self.canonical.render() if self.canonical is not None else None,
            "branches_agree": self.branches_agree,
            "multilinear_unit": self.multilinear_unit,
            "seed_count": self.seed_count,
            "seed_value": self.seed_value,
            "expected_match": self.expected_match,
            "mismatches": [m.render() for m in self.mismatches],
            "chain_agree": self.chain_agree,
            "oracle_agree": self.oracle_agree,
            "printed_match": self.printed_match,
            "covers_variables": self.covers_variables,
            "problems": list(self.problems),
            "as_printed": self.as_printed,
            "passed": self.passed,
        }


def _read_branches(texts: Sequence[str]) -> Tuple[List[Tuple[Product, Polynomial]], List[str]]:
    branches = []
    problems = []
    for number, text in enumerate(texts, start=1):
        try:
            node = parse(text)
            products = node.branches if isinstance(node, IdentityAssertion) else (node,)
            for product in products:
                branches.append((product, expand(product)))
        except (NotationError, DimensionError) as err:
            problems.append(f"expression {number}: {err}")
    return branches, problems


def verify_family(
    record: FamilyRecord,
    as_printed: bool = False,
    oracle_trials: int = 0,
    seed: int = 0,
) -> VerificationReport:
    """Verify one family; failures are reported, never raised.

    Args:
        record (FamilyRecord): The family to verify.
        as_printed (bool, optional): Verify the published texts instead of
            the corrected ones. Defaults to False.
        oracle_trials (int, optional): Random points for the independent
            oracle; 0 skips it. Defaults to 0.
        seed (int, optional): Seed of the oracle points. Defaults to 0.

    Returns:
        VerificationReport: The outcome of every check.
    """
    texts = record.as_printed if as_printed else record.expressions
    branches, problems = _read_branches(texts)
    if not branches:
        logger.warning("family %s: no expression could be evaluated", record.id)
        return VerificationReport(
            record.id, None, False, False, 0, problems=tuple(problems), as_printed=as_printed
        )

    canonical = branches[0][1]
    mismatches = tuple(value - canonical for _, value in branches[1:] if value != canonical)
    seed_count = canonical.term_count()

    expected_match = None
    if record.expected_terms is not None:
        expected_match = seed_count == record.expected_terms.value

    chains = [(to_chain(p), value) for p, value in branches]
    chains = [(chain, value) for chain, value in chains if chain is not None]
    chain_agree = all(chain_eval(c) == value for c, value in chains) if chains else None

    printed_match = None
    if record.printed_function is not None:
        try:
            printed_match = poly_value(parse_poly(record.printed_function)) == canonical
        except NotationError as err:
            problems.append(f"printed function: {err}")

    oracle_agree = None
    if oracle_trials > 0:
        products = tuple(p for p, _ in branches)
        node = IdentityAssertion(products) if len(products) > 1 else products[0]
        oracle_agree = point_check(node, oracle_trials, seed) and all(
            terms_equal(naive_expand(p), value) for p, value in branches
        )

    written = set()
    for product, _ in branches:
        written.update(variables(product))

    report = VerificationReport(
        family_id=record.id,
        canonical=canonical,
        branches_agree=not mismatches,
        multilinear_unit=canonical.is_unit_multilinear(),
        seed_count=seed_count,
        seed_value=canonical.evaluate(all_ones(canonical)),
        expected_match=expected_match,
        mismatches=mismatches,
        chain_agree=chain_agree,
        oracle_agree=oracle_agree,
        printed_match=printed_match,
        covers_variables=written <= set(canonical.variables()),
        problems=tuple(problems),
        as_printed=as_printed,
    )
    if report.passed:
        logger.debug("family %s: %s (%d terms)", record.id, canonical, seed_count)
    else:
        logger.warning("family %s failed verification", record.id)
    return report


def verify_all(
    records: Sequence[FamilyRecord],
    jobs: int = 1,
    as_printed: bool = False,
    oracle_trials: int = 0,
    seed: int = 0,
) -> List[VerificationReport]:
    """Verify many families; reports come back in input order.

    Args:
        records (Sequence[FamilyRecord]): Families to verify.
        jobs (int, optional): Worker threads. Defaults to 1.
        as_printed, oracle_trials, seed: Passed to :func:`verify_family`.
    """
    verify = partial(verify_family, as_printed=as_printed, oracle_trials=oracle_trials, seed=seed)
    if jobs <= 1 or len(records) <= 1:
        return [verify(r) for r in records]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(verify, records))


def seed_counts(
    records: Sequence[FamilyRecord], reports: Sequence[VerificationReport]
) -> Dict[str, Tuple[int, ...]]:
    """Distinct Conway numbers found for each seed label."""
    found: Dict[str, set] = {}
    for record, report in zip(records, reports):
        found.setdefault(record.seed_label, set()).add(report.seed_count)
    return {label: tuple(sorted(counts)) for label, counts in found.items()}


def summary_frame(
    records: Sequence[FamilyRecord], reports: Sequence[VerificationReport]
) -> pd.DataFrame:
    """One row per family: id, seed, conways, Conway number, factorizations."""
    rows = [
        {
            "id": record.id,
            "seed": record.seed_label,
            "conways": record.conway_count,
            "conway_number": report.seed_count,
            "factorizations": len(record.expressions),
        }
        for record, report in zip(records, reports)
    ]
    columns = ["id", "seed", "conways", "conway_number", "factorizations"]
    return pd.DataFrame(rows, columns=columns)
