//! Symbol and kernel-combination files as read by the `fockna` binary.
//!
//!     cargo run --example json_files

use fockna::schema::{CombinationFile, SymbolFile};
use fockna::{gallery, ComplexVector, KernelCombination};

fn main() -> fockna::Result<()> {
    let sym = gallery::isometry_embedding(1)?;
    let text = serde_json::to_string(&SymbolFile::from_symbol(&sym)).expect("serializable");
    println!("{text}");
    assert_eq!(SymbolFile::parse(&text)?, sym);

    let f = KernelCombination::sum_of_kernels(&[ComplexVector::unit(2, 0), ComplexVector::unit(2, 1)])?;
    let text = serde_json::to_string_pretty(&CombinationFile::from_combination(&f)).expect("serializable");
    println!("{text}");

    let far = KernelCombination::normalized_kernel(ComplexVector::from_real(&[40.0])?)?;
    println!("{}", serde_json::to_string(&CombinationFile::from_combination(&far)).expect("serializable"));
    Ok(())
}
