//! Annealed search for large Besicovitch families and K-configurations,
//! in the plane and on the sphere. The best planar family is written as a
//! scene and read back.

use besicover::io::{parse_scene, SceneFile};
use besicover::kernel::is_besicovitch_family;
use besicover::search::{search_max_besicovitch_family, search_max_k_configuration, SearchConfig};
use besicover::{Result, Space};

fn main() -> Result<()> {
    let cfg = SearchConfig::with_seed(3);
    let plane = Space::euclidean(2)?;
    let w = search_max_besicovitch_family(&plane, [0.8, 1.0], &cfg)?;
    println!("plane: {} balls, feasible {}, per restart {:?}", w.score, w.feasible, w.trace);

    let text = SceneFile::new(&w.best).to_json();
    let back = parse_scene(&text)?.family();
    println!("  re-read from JSON: {:?}", is_besicovitch_family(&back));

    let k = search_max_k_configuration(&plane, [0.02, 1.0], Some(&w.best), &cfg)?;
    println!("K-configuration: {} balls", k.score);

    let sphere = Space::sphere(2, 1.0)?;
    let s = search_max_besicovitch_family(&sphere, [0.2, 0.4], &cfg)?;
    println!("{}: {} balls, feasible {}", sphere.label(), s.score, s.feasible);

    let h2 = Space::hyperbolic(2)?;
    let h = search_max_besicovitch_family(&h2, [0.8, 1.0], &cfg)?;
    println!("{}: {} balls, feasible {}", h2.label(), h.score, h.feasible);
    Ok(())
}
