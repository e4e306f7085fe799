"""Variable-length motif discovery for vehicle acceleration traces."""

from ._drivemotif import (
    DiscoveryConfig,
    DiscoveryResult,
    DrivemotifError,
    Motif,
    ModifiedWord,
    PrunedMotifSet,
    Segment,
    SynthSpec,
    SynthTrip,
    TemplateSpec,
    breakpoints,
    dbscan,
    dbscan_motifs,
    discover,
    dtw,
    dtw_path,
    euclid,
    load_trip,
    modified_sax,
    paa,
    prune_k_motifs,
    sax_word,
    synth_trip,
    zscore,
)

__all__ = [
    "DiscoveryConfig",
    "DiscoveryResult",
    "DrivemotifError",
    "Motif",
    "ModifiedWord",
    "PrunedMotifSet",
    "Segment",
    "SynthSpec",
    "SynthTrip",
    "TemplateSpec",
    "breakpoints",
    "dbscan",
    "dbscan_motifs",
    "discover",
    "dtw",
    "dtw_path",
    "euclid",
    "load_trip",
    "modified_sax",
    "paa",
    "prune_k_motifs",
    "sax_word",
    "synth_trip",
    "zscore",
]
