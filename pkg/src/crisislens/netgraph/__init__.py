"""Interaction and hashtag networks: construction, metrics, communities, filtering."""
from .evolution import (
    ACCOUNT_TYPES,
    AccountLabel,
    DailyInDegreeTable,
    daily_top50_table,
    load_labels,
    parse_labels,
    top_accounts,
)
from .graphs import (
    HashtagGraph,
    InteractionGraph,
    build_hashtag_network,
    build_interaction_graph,
    connected_components,
    daily_ego_networks,
    drop_ego_lcc,
    ego_network,
    slice_graph,
    slice_records,
    superimpose,
)
from .louvain import CommunityPartition, louvain, modularity
from .metrics import avg_shortest_path, density, density_value, in_degree_distribution, summary
from .topics import (
    community_topic_shares,
    filter_topic_communities,
    topic_filter,
    wilson_lower_bound,
    z_for_confidence,
)

__all__ = [
    "ACCOUNT_TYPES",
    "AccountLabel",
    "CommunityPartition",
    "DailyInDegreeTable",
    "HashtagGraph",
    "InteractionGraph",
    "avg_shortest_path",
    "build_hashtag_network",
    "build_interaction_graph",
    "community_topic_shares",
    "connected_components",
    "daily_ego_networks",
    "daily_top50_table",
    "density",
    "density_value",
    "drop_ego_lcc",
    "ego_network",
    "filter_topic_communities",
    "in_degree_distribution",
    "load_labels",
    "louvain",
    "modularity",
    "parse_labels",
    "slice_graph",
    "slice_records",
    "summary",
    "superimpose",
    "top_accounts",
    "topic_filter",
    "wilson_lower_bound",
    "z_for_confidence",
]
