"""Parallel vertex-centric graph embedding with random-graph negative
sampling, plus link-prediction and vertex-classification evaluation."""

from .classifiers import ClassifierSpec, LogisticRegression, MLP, micro_f1, train_classifier
from .engine import (AccumulatorStats, NonFiniteMessageError, PartialAccumulator,
                     aggregate_messages, reduce_deterministic, superstep)
from .evaluation import (LinkDataset, Metrics, classify_vertices, confusion_metrics,
                         evaluate, evaluate_link_prediction, featurize_pair,
                         featurize_pairs, jaccard_predict, jaccard_score,
                         make_link_dataset)
from .graph import (Graph, GraphFormatError, RemapTable, empty_graph, from_pairs,
                    load_edge_list, partition_edges, save_edge_list, union)
from .sampling import SamplerConfig, sample_negative_graph
from .sbm import sbm_graph
from .trainer import (TrainConfig, TrainReport, TrainingDivergedError, edge_gradient,
                      init_embeddings, load_embeddings_binary, load_embeddings_text,
                      objective, save_embeddings_binary, save_embeddings_text, train,
                      vertex_update)

__version__ = "0.1.0"
