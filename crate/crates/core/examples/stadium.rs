//! Faces need not be exposed: the stadium conv(D((-1,0),1) ∪ D((1,0),1)).

use invariant_faces::correspondence::Stadium;
use invariant_faces::linalg::Vector;

fn main() {
    let s = Stadium;
    for (x, y) in [(1.0, 1.0), (2.0, 0.0), (0.0, 1.0), (1.0 + 0.6, 0.8)] {
        let p = Vector::from_vec(vec![x, y]);
        println!("({x}, {y}): extreme {}, exposed {}", s.is_extreme(&p), s.is_exposed_point(&p));
    }
    println!("face exposed by (0,1): {:?}", s.exposed_face(&Vector::from_vec(vec![0.0, 1.0])));
}
