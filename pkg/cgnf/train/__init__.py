# Copyright cgnf developers.  See LICENSE file for details.

"""
Dataset ingestion, de/quantization, splitting, maximum-likelihood training
and model persistence.
"""

from ._dataset import (
    TrainingError, ColumnMismatch, EmptyDataset, NonIntegerInput,
    MissingValues, OutOfRangeValue, ColumnKind, ColumnSpec, Dataset,
    parse_column_spec, load_column_spec, write_column_spec,
    column_spec_document, make_dataset, load_dataset, write_dataset,
)
from ._quantize import (
    NOISE_SCALE, dequantize, quantize, dequantize_units, quantize_units,
)
from ._trainer import (
    DivergedLoss, TrainConfig, TrainedModel, split_indices, split,
    gradient_step, train,
)
from ._persist import (
    MAGIC, FORMAT_VERSION, CorruptFile, VersionMismatch, model_to_bytes,
    model_from_bytes, save_model, load_model,
)

__all__ = [
    "TrainingError", "ColumnMismatch", "EmptyDataset", "NonIntegerInput",
    "MissingValues", "OutOfRangeValue", "ColumnKind", "ColumnSpec",
    "Dataset", "parse_column_spec", "load_column_spec", "write_column_spec",
    "column_spec_document", "make_dataset", "load_dataset", "write_dataset",
    "NOISE_SCALE", "dequantize", "quantize", "dequantize_units",
    "quantize_units", "DivergedLoss", "TrainConfig", "TrainedModel",
    "split_indices", "split", "gradient_step", "train", "MAGIC",
    "FORMAT_VERSION", "CorruptFile", "VersionMismatch", "model_to_bytes",
    "model_from_bytes", "save_model", "load_model",
]
