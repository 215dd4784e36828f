//! Built-in presets, embedded from the `catalog/` directory.
//!
//! Numeric values in these files are external constants (public
//! architecture descriptions, vendor spec sheets, calibration choices);
//! each file carries a `provenance` note.

pub const MODELS: &[(&str, &str)] = &[
    ("attn48-gqa", include_str!("../catalog/models/attn48-gqa.json")),
    ("attn48-mha", include_str!("../catalog/models/attn48-mha.json")),
    ("attn48-mla", include_str!("../catalog/models/attn48-mla.json")),
    ("deepseek-v3", include_str!("../catalog/models/deepseek-v3.json")),
    ("llama3-70b", include_str!("../catalog/models/llama3-70b.json")),
    ("mixtral-8x22b", include_str!("../catalog/models/mixtral-8x22b.json")),
    ("toy", include_str!("../catalog/models/toy.json")),
];

pub const HARDWARE: &[(&str, &str)] = &[
    ("b200", include_str!("../catalog/hardware/b200.json")),
    ("h100-sxm", include_str!("../catalog/hardware/h100-sxm.json")),
    ("mi300x", include_str!("../catalog/hardware/mi300x.json")),
    ("unit", include_str!("../catalog/hardware/unit.json")),
];

pub const WORKLOADS: &[(&str, &str)] = &[
    ("chatbot", include_str!("../catalog/workloads/chatbot.json")),
    ("coding", include_str!("../catalog/workloads/coding.json")),
    ("computer-use", include_str!("../catalog/workloads/computer-use.json")),
    ("web-use", include_str!("../catalog/workloads/web-use.json")),
];

