//! The bundled definition files under paper/ are rendered from the
//! programmatic catalogue. `regenerate` (ignored) rewrites them;
//! `bundled_files_match_catalogue` keeps the checked-in copies in sync
//! and proves they parse back to working systems.

use std::collections::BTreeMap;
use std::path::PathBuf;

use liecheck::catalogue::{
    emhd_generator, emhd_system, generator_to_dsl, hm_generator, hm_system, kinetic_generator,
    kinetic_system, moment_generator, moment_system, side_to_dsl, system_to_dsl,
};

fn paper_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../paper")
}

/// Every bundled file, rendered fresh from the catalogue.
fn rendered_files() -> BTreeMap<String, String> {
    let mut files = BTreeMap::new();

    let emhd = emhd_system();
    files.insert("emhd.sys".to_string(), system_to_dsl(&emhd));
    for id in ["x1", "x2", "x3", "x4", "x5", "x6"] {
        let g = emhd_generator(&emhd, id).unwrap();
        files.insert(format!("emhd-{id}.gen"), generator_to_dsl(&g));
    }

    let hm = hm_system();
    files.insert("hm.sys".to_string(), system_to_dsl(&hm));
    for id in ["x1", "x2", "xbad"] {
        let (g, side) = hm_generator(&hm, id).unwrap();
        files.insert(format!("hm-{id}.gen"), generator_to_dsl(&g));
        if !side.is_empty() {
            files.insert(format!("hm-{id}.cond"), side_to_dsl(&side));
        }
    }

    for n in 0..=4u32 {
        let sys = moment_system(n);
        files.insert(format!("moments-n{n}.sys"), system_to_dsl(&sys));
        for id in ["x1", "x2", "x3", "x4", "x5"] {
            let g = moment_generator(&sys, n, id).unwrap();
            files.insert(format!("moments-n{n}-{id}.gen"), generator_to_dsl(&g));
        }
        if n >= 1 {
            let g = moment_generator(&sys, n, "xfgn").unwrap();
            files.insert(format!("moments-n{n}-xfgn.gen"), generator_to_dsl(&g));
        }
    }

    let kin = kinetic_system();
    files.insert("kinetic.sys".to_string(), system_to_dsl(&kin));
    for id in ["x1", "x2", "x3", "x4", "x5"] {
        let g = kinetic_generator(&kin, id).unwrap();
        files.insert(format!("kinetic-{id}.gen"), generator_to_dsl(&g));
    }

    files
}

#[test]
fn bundled_files_match_catalogue() {
    let dir = paper_dir();
    for (name, content) in rendered_files() {
        let on_disk = std::fs::read_to_string(dir.join(&name))
            .unwrap_or_else(|e| panic!("missing bundled file {name}: {e}"));
        assert_eq!(on_disk, content, "{name} is out of sync with the catalogue");
    }
}

#[test]
fn bundled_systems_parse_and_validate() {
    let dir = paper_dir();
    for name in ["emhd.sys", "hm.sys", "moments-n2.sys", "kinetic.sys"] {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        let sys = symkernel::parse_system(&text, name).unwrap();
        sys.validate().unwrap();
    }
}

#[test]
#[ignore = "writes the bundled files; run on catalogue changes"]
fn regenerate() {
    let dir = paper_dir();
    std::fs::create_dir_all(&dir).unwrap();
    for (name, content) in rendered_files() {
        std::fs::write(dir.join(&name), content).unwrap();
    }
}
