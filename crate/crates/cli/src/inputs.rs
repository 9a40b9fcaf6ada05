//! Reading input files, with the packaged data as a fallback.

use std::path::Path;

use anyhow::anyhow;

/// An error with its process exit code.
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    /// Bad arguments or malformed input.
    pub fn usage(error: anyhow::Error) -> Self {
        Failure { code: 2, error }
    }

    /// A well-formed request that failed.
    pub fn domain(error: anyhow::Error) -> Self {
        Failure { code: 1, error }
    }
}

/// Reads `path`. When it does not exist, a file of the same name is looked up
/// in `$ZB_DATA_DIR` and then among the packaged assets.
pub fn read_input(path: &Path) -> Result<String, Failure> {
    match std::fs::read_to_string(path) {
        Ok(text) => Ok(text),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
            packaged(name)
                .map_err(Failure::usage)?
                .ok_or_else(|| Failure::usage(anyhow!("{}: no such file", path.display())))
        }
        Err(e) => Err(Failure::usage(anyhow!("{}: {e}", path.display()))),
    }
}

/// A data file by name from `$ZB_DATA_DIR`, else from the packaged assets.
pub fn packaged(name: &str) -> anyhow::Result<Option<String>> {
    if let Some(dir) = std::env::var_os("ZB_DATA_DIR") {
        let p = Path::new(&dir).join(name);
        if p.is_file() {
            return Ok(Some(std::fs::read_to_string(&p).map_err(|e| anyhow!("{}: {e}", p.display()))?));
        }
    }
    Ok(zb_core::data::asset(name).map(str::to_owned))
}
