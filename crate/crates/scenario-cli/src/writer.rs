//! Serialized artifact writer: every byte goes through one place, so
//! concurrent experiment internals cannot interleave file output.

use crate::report::RunReport;
use std::io::Write;
use std::path::PathBuf;

pub struct ArtifactWriter {
    pub out_dir: PathBuf,
}

impl ArtifactWriter {
    pub fn new(out_dir: PathBuf) -> std::io::Result<Self> {
        std::fs::create_dir_all(&out_dir)?;
        Ok(ArtifactWriter { out_dir })
    }

    pub fn write(
        &mut self,
        name: &str,
        bytes: &[u8],
        report: &mut RunReport,
    ) -> std::io::Result<()> {
        let path = self.out_dir.join(name);
        let mut f = std::fs::File::create(&path)?;
        f.write_all(bytes)?;
        report.artifacts.push(name.to_string());
        Ok(())
    }
}
