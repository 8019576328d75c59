//! Benchmark fixtures. The benchmarks themselves live in `benches/`.

use ztk_core::checker::{Environment, TruncMode};
use ztk_core::corpus::{builtin, load_builtin};

/// The bundled corpus up to `tier`, checked in JNE mode.
pub fn corpus_env(tier: u8) -> Environment {
    load_builtin(TruncMode::Jne, &builtin::files_up_to(tier))
        .into_result()
        .unwrap_or_else(|e| panic!("{}", e.first()))
}
