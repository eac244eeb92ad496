fn main() {
    std::process::exit(ltl_qbe::cli::run(std::env::args_os()));
}
