# Copyright cgnf developers.  See LICENSE file for details.
# -*- test-case-name: cgnf.train.test.test_persist -*-

"""
The model file format.

A model file is::

    b"CGNF"                  magic
    u16, big-endian          format version
    u32, big-endian          length of the header in bytes
    header                   UTF-8 JSON (see below)
    parameters               little-endian float64 values

The header holds the canonical DAG text, the node roles, the column spec,
the training configuration, the losses and history, the network
architecture and the shape of every parameter array.  The parameter arrays
follow in ``FlowModel.parameters()`` order: node by node, the conditioner's
weights and biases layer by layer (or the constant context of a node without
a conditioner), then the integrand network's, then the bias network's.
"""

import json
import struct

import numpy as np

from ..flow import FlowModel
from ..graph import parse_dag, serialize_dag, with_roles, DagError
from ..numeric import Mlp
from ._dataset import TrainingError, ColumnSpec
from ._trainer import TrainConfig, TrainedModel


__all__ = [
    "MAGIC", "FORMAT_VERSION", "CorruptFile", "VersionMismatch",
    "model_to_bytes", "model_from_bytes", "save_model", "load_model",
]


MAGIC = b"CGNF"
FORMAT_VERSION = 1

_PREAMBLE = struct.Struct(">4sHI")


class CorruptFile(TrainingError):
    """
    The content is not a model file.
    """


class VersionMismatch(TrainingError):
    """
    The model file was written by an incompatible version of the format.
    """


def _network(net):
    if net is None:
        return None
    return dict(widths=list(net.widths), activations=list(net.activations))


def _skeleton(description):
    if description is None:
        return None
    widths = description[u"widths"]
    return Mlp(
        widths=widths,
        weights=[np.zeros((a, b)) for a, b in zip(widths, widths[1:])],
        biases=[np.zeros(b) for b in widths[1:]],
        activations=description[u"activations"])


def model_to_bytes(trained):
    """
    :param TrainedModel trained: The model to serialize.
    :return: ``bytes`` in the model file format.
    """
    model = trained.model
    dag = model.dag
    params = model.parameters()
    header = {
        u"dag": serialize_dag(dag),
        u"roles": dict(dag.roles),
        u"columns": [dict(name=spec.name, kind=spec.kind,
                          cardinality=spec.cardinality, role=spec.role,
                          group_key=spec.group_key)
                     for spec in trained.specs],
        u"config": trained.config.snapshot(),
        u"train_nll": trained.train_nll,
        u"validation_nll": trained.validation_nll,
        u"test_nll": trained.test_nll,
        u"best_epoch": trained.best_epoch,
        u"history": [list(entry) for entry in trained.history],
        u"context_width": model.context_width,
        u"quadrature_nodes": model.quadrature_nodes,
        u"networks": [
            dict(conditioner=_network(model.conditioners[i]),
                 integrand=_network(model.integrands[i]),
                 bias=_network(model.biases[i]))
            for i in range(dag.dimension)],
        u"shapes": [list(p.shape) for p in params],
    }
    encoded = json.dumps(header, sort_keys=True).encode("utf-8")
    data = b"".join(
        np.ascontiguousarray(p, dtype="<f8").tobytes() for p in params)
    return _PREAMBLE.pack(MAGIC, FORMAT_VERSION, len(encoded)) + encoded + data


def model_from_bytes(content):
    """
    :param bytes content: A serialized model.

    :raises CorruptFile: If ``content`` is not a well-formed model file.
    :raises VersionMismatch: If the format version is not supported.

    :return: A ``TrainedModel``.
    """
    if len(content) < _PREAMBLE.size:
        raise CorruptFile("Model file is truncated.")
    magic, version, length = _PREAMBLE.unpack_from(content)
    if magic != MAGIC:
        raise CorruptFile("Not a model file (magic %r)." % (magic,))
    if version != FORMAT_VERSION:
        raise VersionMismatch(
            "Model file format %d is not supported (expected %d)." % (
                version, FORMAT_VERSION))
    start = _PREAMBLE.size
    try:
        header = json.loads(content[start:start + length].decode("utf-8"))
        dag = with_roles(parse_dag(header[u"dag"]), header[u"roles"])
        specs = [ColumnSpec(**dict((str(k), v) for k, v in column.items()))
                 for column in header[u"columns"]]
        snapshot = header[u"config"]
        config = TrainConfig(**dict((str(k), v) for k, v in snapshot.items()))
        networks = header[u"networks"]
        shapes = [tuple(shape) for shape in header[u"shapes"]]
    except (ValueError, KeyError, TypeError, DagError) as e:
        raise CorruptFile("Model file header is unreadable: %s" % (e,))

    data = content[start + length:]
    expected = sum(int(np.prod(shape)) for shape in shapes) * 8
    if len(data) != expected:
        raise CorruptFile(
            "Model file holds %d parameter bytes, expected %d" % (
                len(data), expected))
    arrays = []
    offset = 0
    for shape in shapes:
        count = int(np.prod(shape))
        arrays.append(np.frombuffer(
            data, dtype="<f8", count=count, offset=offset
        ).astype(np.float64).reshape(shape))
        offset += count * 8

    try:
        skeleton = FlowModel(
            dag=dag,
            conditioners=[_skeleton(n[u"conditioner"]) for n in networks],
            contexts=[np.zeros(header[u"context_width"])
                      if n[u"conditioner"] is None else None
                      for n in networks],
            integrands=[_skeleton(n[u"integrand"]) for n in networks],
            biases=[_skeleton(n[u"bias"]) for n in networks],
            context_width=header[u"context_width"],
            quadrature_nodes=header[u"quadrature_nodes"])
        if [p.shape for p in skeleton.parameters()] != shapes:
            raise CorruptFile("Parameter shapes do not match the networks.")
        model = skeleton.with_parameters(arrays)
    except (ValueError, KeyError, TypeError) as e:
        if isinstance(e, CorruptFile):
            raise
        raise CorruptFile("Model file networks are inconsistent: %s" % (e,))
    return TrainedModel(
        model=model, specs=specs, config=config,
        train_nll=header[u"train_nll"],
        validation_nll=header[u"validation_nll"],
        test_nll=header[u"test_nll"], best_epoch=header[u"best_epoch"],
        history=header[u"history"])


def save_model(trained, path):
    """
    Write ``trained`` to ``path``.

    :param TrainedModel trained: The model.
    :param FilePath path: The destination; replaced atomically.
    """
    path.setContent(model_to_bytes(trained))


def load_model(path):
    """
    Read a model file.

    :param FilePath path: The file.

    :raises CorruptFile: If the content is not a model file.
    :raises VersionMismatch: If the format version is not supported.

    :return: A ``TrainedModel``.
    """
    return model_from_bytes(path.getContent())
