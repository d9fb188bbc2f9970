use std::path::Path;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let config = cbindgen::Config::from_file(Path::new(&crate_dir).join("cbindgen.toml"))
        .expect("cbindgen.toml parses");
    let bindings = cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("header generation");

    let out_header = Path::new(&std::env::var("OUT_DIR").unwrap()).join("cwenum.h");
    bindings.write_to_file(&out_header);

    // Keep the committed header in sync; ignore failures on read-only
    // checkouts.
    let committed = Path::new(&crate_dir).join("include").join("cwenum.h");
    let _ = std::fs::create_dir_all(committed.parent().unwrap());
    let _ = std::fs::copy(&out_header, &committed);
}
