"""Statistical tools relating node metadata to network community structure.

Subpackages: graph containers and ingestion (graph), block-model scores
(models), the permutation significance test (bestest), the penalized
free-node model (neosbm), partition-comparison metrics (metrics), synthetic
generators (synthgen), partition-space embedding exports (landscape), and
the command-line interface (cli).
"""

__version__ = "0.1.0"

from .graph import BlockStats, Graph, Partition, block_stats, load_edge_list, load_labels
from .models import ScoreValue, bernoulli_entropy, modularity, multinomial_dcsbm_entropy, poisson_dcsbm_loglik, poisson_sbm_loglik

__all__ = [
    "__version__",
    "Graph", "Partition", "BlockStats", "block_stats",
    "load_edge_list", "load_labels",
    "ScoreValue", "bernoulli_entropy", "poisson_sbm_loglik",
    "poisson_dcsbm_loglik", "multinomial_dcsbm_entropy", "modularity",
]
