fn main() {
    std::process::exit(padic_fractal::cli::dispatch(std::env::args_os()));
}
