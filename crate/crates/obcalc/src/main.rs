fn main() {
    std::process::exit(obcalc::cli::main());
}
