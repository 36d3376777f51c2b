# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.train.test.test_dataset -*-

"""
Tabular observational data aligned with a causal DAG.

A dataset is a CSV file whose header names the DAG nodes, plus a column
spec (JSON) declaring for every column its kind, the cardinality of discrete
columns, its causal role and whether it is the group key::

    {
        "A": {"kind": "discrete", "cardinality": 2, "role": "treatment"},
        "Y": {"kind": "discrete", "cardinality": 8, "role": "outcome"},
        "country": {"group_key": true}
    }

The group key may be a DAG column or an extra column which only labels
units (for example a country).
"""

import json

import numpy as np
import pandas as pd
import yaml

from characteristic import attributes

from ..graph import NodeRole, with_roles


__all__ = [
    "TrainingError", "ColumnMismatch", "EmptyDataset", "NonIntegerInput",
    "MissingValues", "OutOfRangeValue",
    "ColumnKind", "ColumnSpec", "Dataset",
    "parse_column_spec", "load_column_spec", "write_column_spec",
    "column_spec_document",
    "make_dataset", "load_dataset", "write_dataset",
]


class TrainingError(ValueError):
    """
    Data could not be ingested or a model could not be trained or stored.
    """


class ColumnMismatch(TrainingError):
    """
    The dataset columns, the column spec and the DAG nodes disagree.
    """


class EmptyDataset(TrainingError):
    """
    An operation needs at least one row.
    """


class NonIntegerInput(TrainingError):
    """
    A discrete value is not an integer.
    """


class MissingValues(TrainingError):
    """
    Some rows have gaps.
    """


class OutOfRangeValue(TrainingError):
    """
    A discrete value lies outside ``[0, cardinality - 1]``.
    """


class ColumnKind(object):
    """
    Kinds of dataset columns.
    """
    DISCRETE = u"discrete"
    CONTINUOUS = u"continuous"

    ALL = frozenset([DISCRETE, CONTINUOUS])


@attributes(["name", "kind", "cardinality", "role", "group_key"],
            defaults=dict(kind=None, cardinality=None, role=NodeRole.PLAIN,
                          group_key=False))
class ColumnSpec(object):
    """
    How to interpret one dataset column.

    :ivar unicode name: The column (and DAG node) name.
    :ivar unicode kind: A ``ColumnKind``; ``None`` only for a group-key
        column which is not a DAG node.
    :ivar int cardinality: ``N`` for a discrete column holding ``0 .. N-1``.
    :ivar unicode role: A ``NodeRole`` tag.
    :ivar bool group_key: Whether the column labels the unit groups.
    """
    def __init__(self):
        if self.kind is not None and self.kind not in ColumnKind.ALL:
            raise ColumnMismatch("Column %s has unknown kind %r" % (
                self.name, self.kind))
        if self.role not in NodeRole.ALL:
            raise ColumnMismatch("Column %s has unknown role %r" % (
                self.name, self.role))
        if self.kind == ColumnKind.DISCRETE:
            if (not isinstance(self.cardinality, int) or
                    isinstance(self.cardinality, bool) or
                    self.cardinality < 1):
                raise ColumnMismatch(
                    "Discrete column %s needs a positive integer "
                    "cardinality, not %r" % (self.name, self.cardinality))
        elif self.cardinality is not None:
            raise ColumnMismatch(
                "Only discrete columns have a cardinality (%s)" % (
                    self.name,))

    @property
    def discrete(self):
        return self.kind == ColumnKind.DISCRETE


def parse_column_spec(content):
    """
    :param unicode content: JSON (or YAML) text mapping column names to
        their settings.

    :raises ColumnMismatch: If the content is not a mapping of valid
        settings.

    :return: A ``list`` of ``ColumnSpec`` in name order.
    """
    try:
        raw = yaml.safe_load(content)
    except yaml.YAMLError as e:
        raise ColumnMismatch("Column spec is not valid JSON: %s" % (e,))
    if not isinstance(raw, dict) or not raw:
        raise ColumnMismatch("Column spec must be a non-empty mapping.")
    specs = []
    for name in sorted(raw):
        settings = raw[name] or {}
        if not isinstance(settings, dict):
            raise ColumnMismatch("Settings of column %s must be a mapping." % (
                name,))
        unknown = set(settings) - {u"kind", u"cardinality", u"role",
                                   u"group_key"}
        if unknown:
            raise ColumnMismatch("Column %s has unknown settings: %s" % (
                name, u", ".join(sorted(unknown))))
        specs.append(ColumnSpec(
            name=str(name), kind=settings.get(u"kind"),
            cardinality=settings.get(u"cardinality"),
            role=settings.get(u"role", NodeRole.PLAIN),
            group_key=bool(settings.get(u"group_key", False))))
    return specs


def load_column_spec(path):
    """
    Read a column-spec file.

    :param FilePath path: The file.
    :return: A ``list`` of ``ColumnSpec``.
    """
    return parse_column_spec(path.getContent().decode("utf-8"))


def column_spec_document(specs):
    """
    :return: The JSON-compatible mapping describing ``specs``.
    """
    document = {}
    for spec in specs:
        settings = {}
        if spec.kind is not None:
            settings[u"kind"] = spec.kind
        if spec.cardinality is not None:
            settings[u"cardinality"] = spec.cardinality
        if spec.role != NodeRole.PLAIN:
            settings[u"role"] = spec.role
        if spec.group_key:
            settings[u"group_key"] = True
        document[spec.name] = settings
    return document


def write_column_spec(specs, path):
    """
    Write ``specs`` as a JSON column-spec file with sorted keys.

    :param FilePath path: The destination.
    """
    path.setContent(json.dumps(
        column_spec_document(specs), sort_keys=True, indent=2
    ).encode("utf-8") + b"\n")


@attributes(["dag", "specs", "values", "groups", "group_column"],
            defaults=dict(groups=None, group_column=None))
class Dataset(object):
    """
    Units observed over the variables of a causal DAG.

    :ivar CausalDag dag: The DAG, carrying the column roles.
    :ivar tuple specs: One ``ColumnSpec`` per DAG node, in node order.
    :ivar numpy.ndarray values: ``(n, d)`` float64 observations with discrete
        columns holding their integer codes.
    :ivar numpy.ndarray groups: ``(n,)`` group labels (``str``), or ``None``.
    :ivar unicode group_column: Name of the group-key column, or ``None``.
    """
    def __init__(self):
        """
        :raises ColumnMismatch: If the specs or values do not match the DAG.
        :raises OutOfRangeValue: If a discrete value is out of range.
        :raises NonIntegerInput: If a discrete value is not an integer.
        """
        self.specs = tuple(self.specs)
        if tuple(spec.name for spec in self.specs) != self.dag.nodes:
            raise ColumnMismatch(
                "Column specs %r do not match DAG nodes %r" % (
                    [spec.name for spec in self.specs], list(self.dag.nodes)))
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[1] != self.dag.dimension:
            raise ColumnMismatch("Expected (n, %d) values, got %r" % (
                self.dag.dimension, values.shape))
        if not np.all(np.isfinite(values)):
            raise MissingValues("Dataset values must be finite.")
        for i, spec in enumerate(self.specs):
            if spec.kind is None:
                raise ColumnMismatch("DAG column %s needs a kind." % (
                    spec.name,))
            if spec.discrete:
                column = values[:, i]
                bad = np.flatnonzero(column != np.round(column))
                if bad.size:
                    raise NonIntegerInput(
                        "Column %s row %d holds %r, not an integer" % (
                            spec.name, bad[0], column[bad[0]]))
                bad = np.flatnonzero(
                    (column < 0) | (column > spec.cardinality - 1))
                if bad.size:
                    raise OutOfRangeValue(
                        "Column %s row %d holds %r, outside 0..%d" % (
                            spec.name, bad[0], column[bad[0]],
                            spec.cardinality - 1))
        self.values = values
        if self.groups is not None:
            self.groups = np.asarray(self.groups, dtype=str)
            if self.groups.shape != (values.shape[0],):
                raise ColumnMismatch("Expected one group label per row.")

    @property
    def size(self):
        """
        The number of units.
        """
        return self.values.shape[0]

    def spec_of(self, name):
        """
        :return: The ``ColumnSpec`` of DAG column ``name``.
        """
        return self.specs[self.dag.index(name)]

    def column(self, name):
        """
        :return: The ``(n,)`` values of DAG column ``name``.
        """
        return self.values[:, self.dag.index(name)]

    def subset(self, rows):
        """
        :param rows: Row indices or a boolean mask.
        :return: A ``Dataset`` holding only ``rows``.
        """
        return Dataset(
            dag=self.dag, specs=self.specs, values=self.values[rows],
            groups=None if self.groups is None else self.groups[rows],
            group_column=self.group_column)


def _group_labels(series):
    numeric = pd.to_numeric(series, errors="coerce")
    if numeric.notnull().all() and (numeric == numeric.round()).all():
        return numeric.astype(np.int64).astype(str).to_numpy()
    return series.astype(str).to_numpy()


def make_dataset(dag, specs, values, groups=None):
    """
    Build a ``Dataset`` from a column-spec list which may mention a group-key
    column outside the DAG.

    :param CausalDag dag: The causal DAG.
    :param list specs: ``ColumnSpec`` for every DAG node and optionally one
        extra group-key column.
    :param values: ``(n, d)`` values in DAG node order.
    :param groups: ``(n,)`` labels of an extra group-key column; ignored when
        the group key is a DAG column.

    :raises ColumnMismatch: If ``specs`` do not cover the DAG or declare
        several group keys.

    :return: A ``Dataset`` whose DAG carries the declared roles.
    """
    by_name = dict((spec.name, spec) for spec in specs)
    missing = [node for node in dag.nodes if node not in by_name]
    if missing:
        raise ColumnMismatch("No column spec for DAG nodes: %s" % (
            u", ".join(missing),))
    keys = [spec.name for spec in specs if spec.group_key]
    if len(keys) > 1:
        raise ColumnMismatch("Several group-key columns: %s" % (
            u", ".join(keys),))
    extra = [spec.name for spec in specs
             if spec.name not in dag.nodes and not spec.group_key]
    if extra:
        raise ColumnMismatch("Column specs for columns outside the DAG: %s" % (
            u", ".join(extra),))
    group_column = keys[0] if keys else None
    values = np.asarray(values, dtype=np.float64)
    if group_column in dag.nodes:
        groups = _group_labels(
            pd.Series(values[:, dag.index(group_column)]))
    elif group_column is not None and groups is None:
        raise ColumnMismatch("No labels given for group key %s" % (
            group_column,))
    elif group_column is None:
        groups = None
    roles = dict((spec.name, spec.role) for spec in specs
                 if spec.name in dag.nodes and spec.role != NodeRole.PLAIN)
    return Dataset(
        dag=with_roles(dag, roles),
        specs=[by_name[node] for node in dag.nodes],
        values=values, groups=groups, group_column=group_column)


def load_dataset(path, specs, dag):
    """
    Read a dataset CSV file.

    :param FilePath path: The CSV file; its header names the columns.
    :param list specs: ``ColumnSpec`` for the columns.
    :param CausalDag dag: The causal DAG; it fixes the column order.

    :raises ColumnMismatch: If the header does not hold exactly the DAG nodes
        (plus an optional group-key column) or a column is not numeric.
    :raises MissingValues: If any row has a gap.
    :raises OutOfRangeValue: If a discrete value is out of range.
    :raises NonIntegerInput: If a discrete value is not an integer.

    :return: A ``Dataset``.
    """
    frame = pd.read_csv(path.path, float_precision="round_trip")
    header = [str(name) for name in frame.columns]
    frame.columns = header
    keys = [spec.name for spec in specs if spec.group_key]
    expected = set(dag.nodes) | set(keys)
    if set(header) != expected or len(header) != len(expected):
        raise ColumnMismatch(
            "CSV columns %s do not match the DAG and group key %s" % (
                sorted(header), sorted(expected)))
    gaps = np.flatnonzero(frame.isnull().any(axis=1).to_numpy())
    if gaps.size:
        raise MissingValues("%d rows have missing values, first row %d" % (
            gaps.size, gaps[0]))
    values = np.empty((len(frame), dag.dimension))
    for i, node in enumerate(dag.nodes):
        column = pd.to_numeric(frame[node], errors="coerce")
        if column.isnull().any():
            raise ColumnMismatch("Column %s holds non-numeric values." % (
                node,))
        values[:, i] = column.to_numpy(dtype=np.float64)
    groups = None
    if keys and keys[0] not in dag.nodes:
        groups = _group_labels(frame[keys[0]])
    return make_dataset(dag, specs, values, groups)


def write_dataset(dataset, path):
    """
    Write ``dataset`` as CSV: DAG columns in node order (discrete columns as
    integers) followed by an extra group-key column if there is one.

    :param Dataset dataset: The data.
    :param FilePath path: The destination.
    """
    columns = {}
    for i, spec in enumerate(dataset.specs):
        column = dataset.values[:, i]
        if spec.discrete:
            column = column.astype(np.int64)
        columns[spec.name] = column
    names = list(dataset.dag.nodes)
    if (dataset.group_column is not None and
            dataset.group_column not in dataset.dag.nodes):
        columns[dataset.group_column] = dataset.groups
        names.append(dataset.group_column)
    frame = pd.DataFrame(columns, columns=names)
    path.setContent(frame.to_csv(
        index=False, float_format="%.17g", lineterminator="\n"
    ).encode("utf-8"))
