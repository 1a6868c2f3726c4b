"""7-level finite-alphabet iterative decoding laboratory for LDPC codes on the BSC."""

from ._faidlab import (
    CertificationReport,
    DecimationEvent,
    DecodeResult,
    DecodeTrace,
    TannerGraph,
    audit_lemma1,
    audit_lemma2,
    bp_decode,
    bsc_sample,
    certify,
    cn_update,
    decide_bit,
    decimation_decide,
    dfaid_decode,
    faid_decode,
    fer_simulate,
    run_with_trace,
    tanner155,
    verify_theorem1,
    vn_update,
    vn_update_decimated,
)

__all__ = [
    "CertificationReport",
    "DecimationEvent",
    "DecodeResult",
    "DecodeTrace",
    "TannerGraph",
    "audit_lemma1",
    "audit_lemma2",
    "bp_decode",
    "bsc_sample",
    "certify",
    "cn_update",
    "decide_bit",
    "decimation_decide",
    "dfaid_decode",
    "faid_decode",
    "fer_simulate",
    "run_with_trace",
    "tanner155",
    "verify_theorem1",
    "vn_update",
    "vn_update_decimated",
]

__version__ = "0.1.0"
