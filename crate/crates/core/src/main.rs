fn main() {
    std::process::exit(homotopy_forge::cli::run(std::env::args_os()));
}
