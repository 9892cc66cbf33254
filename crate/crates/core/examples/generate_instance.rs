//! Generates a reproducible instance, writes it out and reads it back.

use gccf::{FunctionKind, InstanceSpec};

fn main() -> gccf::Result<()> {
    let dir = std::env::temp_dir();
    for kind in FunctionKind::ALL {
        let spec = InstanceSpec::barabasi_albert(8, 2, kind, 2024)?;
        let path = dir.join(format!("example-{kind}.gccf"));
        spec.write_file(&path)?;
        let back = InstanceSpec::read_file(&path)?;
        assert_eq!(back, spec);
        let text = spec.to_text();
        println!("== {} ({} bytes)", path.display(), text.len());
        for line in text.lines().take(6) {
            println!("{line}");
        }
    }
    Ok(())
}
