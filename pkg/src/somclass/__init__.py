"""Unsupervised image clustering with grayscale histograms, PCA/LSA feature
selection and a winner-take-all self-organizing map."""

from .evaluation import accuracy, confusion, map_clusters
from .features import FeatureMatrix, assemble_matrix, compute_histogram
from .imageio import GrayImage, RgbImage, load_image, rgb_to_gray
from .linalg import jacobi_eigh, svd
from .lsa import LsaModel, fit_lsa, project_lsa
from .pca import PcaModel, fit_pca, project_pca
from .pipeline import PipelineConfig, run_pipeline
from .som import SomConfig, SomModel, assign, init_som, train
from .synth import SynthSpec, generate

__version__ = "0.1.0"
