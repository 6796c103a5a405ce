"""Shape-based single-object image classification.

Otsu segmentation, run-length connected-component labeling, eleven region
shape descriptors, and from-scratch ensemble learners evaluated by stratified
cross-validation.
"""

from .dataio import Dataset, parse_arff, parse_csv, stratified_folds, write_arff, write_csv
from .evaluation import accuracy_and_confusion, cross_validate
from .labeling import EmptyMask, label_components, largest_component
from .pipeline import image_features, images_to_dataset
from .raster import binarize, histogram, load_image, otsu_threshold, segment
from .shapefeat import FEATURE_NAMES, FeatureVector, extract_features

__version__ = "0.1.0"
