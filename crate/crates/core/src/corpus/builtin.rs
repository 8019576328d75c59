//! The corpus files shipped with the crate.

/// Corpus files in dependency order.
pub const FILES: &[(&str, &str)] = &[
    ("prelude", include_str!("../../corpus/prelude.ht")),
    ("pathover", include_str!("../../corpus/pathover.ht")),
    ("trunc", include_str!("../../corpus/trunc.ht")),
    ("int", include_str!("../../corpus/int.ht")),
    ("torsor", include_str!("../../corpus/torsor.ht")),
    ("circle_rec", include_str!("../../corpus/circle_rec.ht")),
    ("circle_ind", include_str!("../../corpus/circle_ind.ht")),
    ("jde_extras", include_str!("../../corpus/jde_extras.ht")),
];

pub const MANIFEST: &str = include_str!("../../corpus/manifest.toml");

/// Tier of each file.
pub fn tier(file: &str) -> Option<u8> {
    Some(match file {
        "prelude" | "pathover" | "trunc" => 1,
        "int" => 2,
        "torsor" | "circle_rec" => 3,
        "circle_ind" | "jde_extras" => 4,
        _ => return None,
    })
}

pub fn source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Bundled files up to and including `tier`, excluding the JDE-only file.
pub fn files_up_to(tier_max: u8) -> Vec<&'static str> {
    FILES
        .iter()
        .map(|(n, _)| *n)
        .filter(|n| *n != "jde_extras" && tier(n).is_some_and(|t| t <= tier_max))
        .collect()
}
