"""k-SVM: kernel SVM classification with k-means training-set reduction."""

from ._core import (
    Dataset,
    IoError,
    KsvmModel,
    ParseError,
    PreconditionError,
    SvmModel,
    boundary_grid,
    cross_validate,
    generate_scenario,
    grid_search,
    load_csv,
    save_csv,
    train_ksvm,
    train_svm,
)

__all__ = [
    "Dataset",
    "IoError",
    "KsvmModel",
    "ParseError",
    "PreconditionError",
    "SvmModel",
    "boundary_grid",
    "cross_validate",
    "generate_scenario",
    "grid_search",
    "load_csv",
    "save_csv",
    "train_ksvm",
    "train_svm",
]
