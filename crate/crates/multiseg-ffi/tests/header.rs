use std::path::Path;

const EXPORTS: &[&str] = &[
    "ms_multiseg_parse",
    "ms_multiseg_free",
    "ms_multiseg_format",
    "ms_multiseg_len",
    "ms_string_free",
    "ms_remove",
    "ms_dual_remove",
    "ms_is_minimal",
    "ms_minimal_element",
    "ms_epsilon",
    "ms_dagger",
    "ms_realize",
    "ms_last_error_message",
];

#[test]
fn header_declares_every_export() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/multiseg.h");
    let header = std::fs::read_to_string(path).unwrap();
    for f in EXPORTS {
        assert!(header.contains(&format!("{f}(")), "missing {f}");
    }
    assert!(header.contains("typedef struct MsMultiseg MsMultiseg;"));
    assert!(header.contains("MS_STATUS_OK = 0"));
}

#[test]
fn header_compiles_as_c() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/multiseg.h");
    let Ok(out) = std::process::Command::new("cc").args(["-fsyntax-only", "-Wall", "-x", "c"]).arg(&path).output() else {
        eprintln!("no C compiler available; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
