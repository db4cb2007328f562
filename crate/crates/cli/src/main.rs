fn main() {
    std::process::exit(besselzeta::run(std::env::args_os()));
}
