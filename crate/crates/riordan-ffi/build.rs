fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let header = std::path::Path::new(&crate_dir).join("include").join("riordan.h");

    let config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("RIORDAN_H".into()),
        cpp_compat: true,
        documentation: true,
        enumeration: cbindgen::EnumConfig {
            prefix_with_name: true,
            ..cbindgen::EnumConfig::default()
        },
        header: Some(
            "/* C interface to the riordan crate.\n\
              *\n\
              * All coefficients cross this boundary as decimal rational strings\n\
              * (\"-5/16\"), never as floating point. Strings returned through\n\
              * char** out-parameters are owned by the caller and must be released\n\
              * with riordan_string_free(); handles with riordan_array_free().\n\
              */"
            .into(),
        ),
        ..cbindgen::Config::default()
    };

    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("cbindgen could not generate the C header")
        .write_to_file(header);

    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=build.rs");
}
