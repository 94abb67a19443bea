use syzlab_core::catalog::{ids, variety};

fn main() {
    for id in ids() {
        let spec = variety(id, 31).unwrap();
        if let Some(phi) = &spec.parametrization {
            let src = phi.forms()[0].ring();
            println!(
                "{id}: {} forms of degree {} in vars {:?}",
                phi.forms().len(),
                phi.forms()[0].homogeneous_degree().unwrap(),
                src.names()
            );
        } else {
            println!("{id}: no parametrization");
        }
    }
}
