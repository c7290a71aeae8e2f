use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// Failure classes with their process exit codes.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    NoConvergence,
    VerifyFailed,
    KernelRejected(String),
    CapExceeded(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::NoConvergence => 2,
            Failure::VerifyFailed => 3,
            Failure::KernelRejected(_) => 4,
            Failure::CapExceeded(_) => 5,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Input(m) => format!("error: {m}"),
            Failure::NoConvergence => "error: power iteration did not converge".into(),
            Failure::VerifyFailed => "error: verification failed".into(),
            Failure::KernelRejected(m) => format!("error: {m}"),
            Failure::CapExceeded(m) => format!("error: {m}"),
        }
    }
}

impl From<btoep::Error> for Failure {
    fn from(e: btoep::Error) -> Self {
        match e {
            btoep::Error::CapExceeded { .. } => Failure::CapExceeded(e.to_string()),
            btoep::Error::KernelRejected { .. } => Failure::KernelRejected(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type Outcome<T> = Result<T, Failure>;

fn staging_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".partial");
    path.with_file_name(name)
}

/// Write all files or none: contents are staged next to their targets and
/// renamed into place only once every stage succeeded.
pub fn write_all_or_nothing(files: &[(PathBuf, String)]) -> Outcome<()> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, text) in files {
        let tmp = staging_path(path);
        if let Err(e) = fs::write(&tmp, text) {
            for t in &staged {
                let _ = fs::remove_file(t);
            }
            return Err(Failure::Input(format!("cannot write {}: {e}", path.display())));
        }
        staged.push(tmp);
    }
    for ((path, _), tmp) in files.iter().zip(&staged) {
        fs::rename(tmp, path)?;
    }
    Ok(())
}

/// Print to stdout, or write to `out` when given.
pub fn emit(out: Option<&Path>, text: &str) -> Outcome<()> {
    match out {
        Some(p) => write_all_or_nothing(&[(p.to_path_buf(), text.to_string())]),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}
