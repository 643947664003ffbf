//! Process-wide π, shared by every subcommand.

use std::sync::{Mutex, MutexGuard, OnceLock};

use pipow_core::PiCache;

static SHARED: OnceLock<Mutex<PiCache>> = OnceLock::new();

/// Locks the shared cache. Writers are serialized by the mutex; a poisoned
/// lock still holds a valid cache, since every update replaces it whole.
pub fn shared_pi() -> MutexGuard<'static, PiCache> {
    SHARED
        .get_or_init(|| Mutex::new(PiCache::new()))
        .lock()
        .unwrap_or_else(|poisoned| poisoned.into_inner())
}
